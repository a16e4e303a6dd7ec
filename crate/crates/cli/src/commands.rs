use std::fmt::Write as _;
use std::fs;
use std::str::FromStr;

use basechange::extension_tower::{
    self as tower, norm_level_image, psi_fn, ExtensionData, RamificationFiltration, RamifiedExtension,
};
use basechange::gl2_cuspidal::{bc_gl2 as run_bc_gl2, validate_admissible, AdmissiblePair};
use basechange::iwahori_variety::{extended_quotient, finiteness_certificate};
use basechange::ktheory::{
    circle_degree_oracle, induced_map, k_groups, reduce_symmetric_component, sym_degree_oracle,
    CircleMatch, CircleSpace, KMorphism, ProperCircleMap,
};
use basechange::tempered_gl1::{bc_gl1 as run_bc_gl1, DualRecord, TemperedDualGL1};
use basechange::{Error, Rational};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Above this many target circles, bc-gl1 lists only the circles in the image.
pub const FULL_TARGET_LIMIT: usize = 4096;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::UnsupportedExtension(_)
                | Error::NotUnramified { .. }
                | Error::EvenDegree { .. }
                | Error::OutOfScope(_) => 3,
                Error::WindowTooSmall { .. } => 4,
                _ => 2,
            },
        }
    }
}

pub struct Rendered {
    pub json: Value,
    pub text: String,
}

fn envelope(command: &str, payload: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(p)) = (&mut out, payload) {
        o.extend(p);
    }
    out
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| CliError::Usage(format!("cannot read {what} from {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid {what} JSON: {e}")))
}

pub fn extquot(n: u32) -> Result<Rendered, CliError> {
    let q = extended_quotient(n)?;
    let mut text = format!("extended quotient for n = {n}: {} components\n", q.components().len());
    for c in q.components() {
        writeln!(text, "  {:<12} {c}", c.partition().to_string()).unwrap();
    }
    let payload = json!({ "count": q.components().len(), "extended_quotient": to_value(&q) });
    Ok(Rendered { json: envelope("extquot", payload), text })
}

pub fn psi(orders: Vec<u64>, xs: &[String]) -> Result<Rendered, CliError> {
    let filt = RamificationFiltration::new(orders)?;
    let mut rows = Vec::new();
    let mut text = format!("orders {:?}\n{:>12} {:>12} {:>12}\n", filt.orders(), "x", "psi", "phi");
    for raw in xs {
        let x = Rational::from_str(raw.trim())
            .map_err(|_| CliError::Usage(format!("not a rational number: {raw}")))?;
        let y: Rational = tower::psi(&filt, &x)?;
        let z: Rational = tower::phi(&filt, &x)?;
        writeln!(text, "{x:>12} {y:>12} {z:>12}").unwrap();
        rows.push(json!({ "x": x.to_string(), "psi": y.to_string(), "phi": z.to_string() }));
    }
    let payload = json!({
        "orders": filt.orders(),
        "psi_function": to_value(&psi_fn::<Rational>(&filt)),
        "rows": rows,
    });
    Ok(Rendered { json: envelope("psi", payload), text })
}

pub fn norm_level(extension: &str, level: u64) -> Result<Rendered, CliError> {
    let x: RamifiedExtension = load(extension, "extension")?;
    let nu = norm_level_image(&x.ext, &x.filtration, level)?;
    let text = format!("N(U_E^{level}) = U_F^{nu}\n");
    let payload = json!({ "extension": to_value(&x), "level_e": level, "level_f": nu });
    Ok(Rendered { json: envelope("norm-level", payload), text })
}

fn matrix_text(name: &str, m: &KMorphism) -> String {
    let mut out = format!("{name}: {} x {}\n", m.rows().len(), m.cols().len());
    if m.rows().len() * m.cols().len() <= 64 {
        for row in m.dense() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(out, "  [{}]", cells.join(" ")).unwrap();
        }
    } else {
        for (i, j, v) in m.nonzero() {
            writeln!(out, "  {} -> {}: {v}", m.rows()[i], m.cols()[j]).unwrap();
        }
    }
    out
}

pub fn bc_gl1(extension: &str, bound: u64) -> Result<Rendered, CliError> {
    let x: RamifiedExtension = load(extension, "extension")?;
    let source = TemperedDualGL1::truncated(x.ext.base().q(), bound)?;
    let bc = run_bc_gl1(&x.ext, &x.filtration, &source)?;
    let target_bound = bc.conductor_map.get(&bound).copied().unwrap_or(0);
    let target = match TemperedDualGL1::truncated(x.ext.top().q(), target_bound) {
        Ok(t) if t.circles().len() <= FULL_TARGET_LIMIT => Some(t),
        Ok(_) | Err(Error::TruncationTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let map = bc.circle_map(&source, target.as_ref())?;
    let (k0, k1) = induced_map(&map)?;

    let mut text = format!(
        "E/F: e = {}, f = {}, class {}; q_F = {}, q_E = {}\ncircle degree {}\n",
        x.ext.e(),
        x.ext.f(),
        x.ext.classify(),
        x.ext.base().q(),
        x.ext.top().q(),
        bc.degree
    );
    let conductors: Vec<String> =
        bc.conductor_map.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
    writeln!(text, "conductors: {}", conductors.join(", ")).unwrap();
    for p in &bc.pairs {
        writeln!(
            text,
            "  chi[{},{}] -> eta[{},{}]  degree {}",
            p.from.conductor, p.from.index, p.to.conductor, p.to.index, p.degree
        )
        .unwrap();
    }
    let columns = if target.is_some() { "full" } else { "image" };
    writeln!(text, "target columns: {columns}").unwrap();
    text.push_str(&matrix_text("K^0", &k0));
    text.push_str(&matrix_text("K^1", &k1));

    let target_json = match &target {
        Some(t) => to_value(&DualRecord::from(t.clone())),
        None => json!({ "q": x.ext.top().q(), "M": target_bound, "circles": bc.image() }),
    };
    let conductor_map: Vec<Value> =
        bc.conductor_map.iter().map(|(a, b)| json!({ "from": a, "to": b })).collect();
    let payload = json!({
        "extension": to_value(&x),
        "degree": bc.degree,
        "source": to_value(&source),
        "target": target_json,
        "target_columns": columns,
        "conductor_map": conductor_map,
        "pairs": to_value(&bc.pairs),
        "k0": to_value(&k0),
        "k1": to_value(&k1),
    });
    Ok(Rendered { json: envelope("bc-gl1", payload), text })
}

pub fn bc_gl2(pair: &str, l: &str) -> Result<Rendered, CliError> {
    let pair: AdmissiblePair = load(pair, "admissible pair")?;
    let l: ExtensionData = load(l, "extension L")?;
    let bc = run_bc_gl2(&pair, &l)?;
    let (k0, k1) = bc.k_matrices()?;
    let target = &bc.target.label;
    let mut text = format!(
        "{} -> {}\ncircle degree {}\nconductor {} -> {}\nEL/L: e = {}, f = {}; EL/E: e = {}, f = {}\ntorsion {}\n",
        bc.source.name(),
        bc.target.name(),
        bc.degree,
        pair.xi.conductor,
        target.xi.conductor,
        bc.compositum.over_l.e(),
        bc.compositum.over_l.f(),
        bc.compositum.over_e.e(),
        bc.compositum.over_e.f(),
        bc.target.torsion,
    );
    text.push_str(&matrix_text("K^0", &k0));
    text.push_str(&matrix_text("K^1", &k1));
    let payload = json!({
        "source": to_value(&pair),
        "report": to_value(&validate_admissible(&pair)),
        "target": to_value(target),
        "degree": bc.degree,
        "conductor": target.xi.conductor,
        "torsion": bc.target.torsion,
        "compositum": to_value(&bc.compositum),
        "k0": to_value(&k0),
        "k1": to_value(&k1),
    });
    Ok(Rendered { json: envelope("bc-gl2", payload), text })
}

fn kmap_render(command: &str, map: &ProperCircleMap, extra: Value, mut text: String) -> Result<Rendered, CliError> {
    let (s0, s1) = k_groups(map.source());
    let (t0, t1) = k_groups(map.target());
    let (k0, k1) = induced_map(map)?;
    writeln!(text, "source {s0}, {s1}; target {t0}, {t1}").unwrap();
    text.push_str(&matrix_text("K^0", &k0));
    text.push_str(&matrix_text("K^1", &k1));
    let mut payload = json!({
        "map": to_value(map),
        "source_groups": [to_value(&s0), to_value(&s1)],
        "target_groups": [to_value(&t0), to_value(&t1)],
        "k0": to_value(&k0),
        "k1": to_value(&k1),
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut payload, extra) {
        o.extend(e);
    }
    Ok(Rendered { json: envelope(command, payload), text })
}

pub fn kmap(map: &str) -> Result<Rendered, CliError> {
    let map: ProperCircleMap = load(map, "circle map")?;
    kmap_render("kmap", &map, json!({}), String::new())
}

pub fn kmap_sym(n: u32, f: u64, samples: Option<u32>) -> Result<Rendered, CliError> {
    let samples = match samples {
        Some(s) => s,
        None => u32::try_from(f.saturating_mul(8))
            .map_err(|_| CliError::Usage(format!("degree {f} too large")))?,
    };
    let source = reduce_symmetric_component(&format!("Sym^{n}"), n, f)?;
    let target = reduce_symmetric_component(&format!("Sym^{n}'"), n, 1)?;
    let oracle = circle_degree_oracle(f, samples)?;
    let sym_oracle = sym_degree_oracle(n, f, samples)?;
    let map = ProperCircleMap::new(
        CircleSpace::from_components(vec![source.component.clone()])?,
        CircleSpace::from_components(vec![target.component])?,
        vec![CircleMatch { source: 0, target: 0, degree: source.degree }],
    )?;
    let text = format!(
        "Sym^{n} with z -> z^{f} reduces to a circle of degree {}\nwinding check ({samples} samples): circle {oracle}, Sym^{n} loop {sym_oracle}\n",
        source.degree
    );
    let extra = json!({
        "reduced": to_value(&source),
        "samples": samples,
        "oracle_degree": oracle,
        "sym_oracle_degree": sym_oracle,
    });
    kmap_render("kmap", &map, extra, text)
}

pub fn finiteness(r: usize, f: u32, window: u32) -> Result<Rendered, CliError> {
    let cert = finiteness_certificate(r, f, window)?;
    let verified = cert.verify();
    let mut text = format!(
        "r = {r}, f = {f}, window {window}\n{} generators:",
        cert.generators.len()
    );
    for g in &cert.generators {
        write!(text, " m{g:?}").unwrap();
    }
    let max_terms = cert.reductions.iter().map(|red| red.terms.len()).max().unwrap_or(0);
    write!(
        text,
        "\n{} invariant monomials reduced, at most {max_terms} terms each\nverified: {verified}\n",
        cert.reductions.len()
    )
    .unwrap();
    let payload = json!({
        "generator_count": cert.generators.len(),
        "reduction_count": cert.reductions.len(),
        "verified": verified,
        "certificate": to_value(&cert),
    });
    Ok(Rendered { json: envelope("finiteness", payload), text })
}
