//! The batch front end. [`run`] parses arguments, executes one job and returns
//! the exit code with everything destined for standard output and error.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 malformed input.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bott_tu::{bott_tu_connection, product_model, H};
use crate::chern_weil::{
    certify_connection_independence, check_bianchi, check_functoriality, collapse_map, lie_automorphism_map, total_curvature,
    z_theta_fat, z_theta_simplicial, Window,
};
use crate::cohomology::{cohomology_window, SimplicialWindow};
use crate::error::{Error, Result};
use crate::gda::is_connection;
use crate::groupoid::{coboundary, holonomy_rep, nerve, Cochain, GroupoidComplex};
use crate::io::{
    bigraded_from_doc, bigraded_to_doc, element_to_doc, latex_bigraded, latex_element, parse_document, CocycleDoc, ConnectionDoc, Document,
    Host, HostKind, PolynomialDoc,
};
use crate::sample;
use crate::simplicial::{BigradedElement, SimplicialHom};
use crate::weil::{canonical_connection, weil_algebra};

#[derive(Parser, Debug)]
#[command(name = "weilkit", version, about = "Exact Chern-Weil computations and finite-groupoid checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for randomized property samples
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Form-degree bound for enumerations and windows
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,

    /// Simplicial-level bound for enumerations and windows
    #[arg(long, global = true)]
    pub level_bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Fat,
    Simplicial,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate presentations, connections, groupoids and bundles
    Validate { paths: Vec<PathBuf> },
    /// Compute the Chern-Weil cocycle z_θ(f)
    ChernWeil {
        connection: PathBuf,
        polynomial: PathBuf,
        #[arg(long, value_enum, default_value_t = Construction::Both)]
        construction: Construction,
        /// Fail unless the cocycle is supported at level 0
        #[arg(long)]
        expect_level0: bool,
    },
    /// Check the Bianchi identity for the total pseudo-curvature
    Bianchi { connection: PathBuf },
    /// Check z_{φθ}(f) = φ z_θ(f) for the maps available on the host
    Functoriality {
        connection: PathBuf,
        polynomial: PathBuf,
        /// A Lie-algebra automorphism inducing a map of the Weil tower
        #[arg(long)]
        automorphism: Option<PathBuf>,
    },
    /// Find a δ-primitive of z_θ1(f) - z_θ2(f)
    Independence { connection1: PathBuf, connection2: PathBuf, polynomial: PathBuf },
    /// Check the equivariant connection Ξ and the map K
    BottTu {
        model: PathBuf,
        polynomial: PathBuf,
        /// Number of random H-basic samples for the chain-map check
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Holonomy of a finite bundle on the vertex group of an object
    Holonomy {
        bundle: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Rational cohomology of a groupoid, or basic cohomology of a connection's host
    Cohomology { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Maps an error to the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Presentation(_) | Error::Dimension(_) => 2,
        _ => 1,
    }
}

/// A finished job: a JSON report, optional display formulas, and whether
/// every check passed.
struct Report {
    value: Value,
    math: Vec<(String, String)>,
    passed: bool,
}

impl Report {
    fn new(value: Value, passed: bool) -> Self {
        Report { value, math: Vec::new(), passed }
    }

    fn with_math(mut self, label: impl Into<String>, latex: String) -> Self {
        self.math.push((label.into(), latex));
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.value).expect("reports serialize") + "\n",
                Format::Latex => render_latex(&report),
            };
            Outcome { code: if report.passed { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn expect_kind<T>(path: &Path, want: &str, pick: impl FnOnce(Document) -> Option<T>) -> Result<T> {
    let doc = load(path)?;
    let kind = doc.kind();
    pick(doc).ok_or_else(|| Error::Parse(format!("{}: expected a {want} document, found {kind}", path.display())))
}

fn connection_doc(path: &Path) -> Result<ConnectionDoc> {
    expect_kind(path, "connection", |d| match d {
        Document::Connection(c) => Some(c),
        _ => None,
    })
}

fn polynomial_doc(path: &Path) -> Result<PolynomialDoc> {
    expect_kind(path, "invariant_polynomial", |d| match d {
        Document::InvariantPolynomial(p) => Some(p),
        _ => None,
    })
}

fn levels_json(x: &BigradedElement) -> Value {
    serde_json::to_value(bigraded_to_doc(x)).expect("levels serialize")
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { paths } => validate(paths, cli),
        Command::ChernWeil { connection, polynomial, construction, expect_level0 } => {
            chern_weil(connection, polynomial, *construction, *expect_level0)
        }
        Command::Bianchi { connection } => bianchi(connection),
        Command::Functoriality { connection, polynomial, automorphism } => functoriality(connection, polynomial, automorphism.as_deref()),
        Command::Independence { connection1, connection2, polynomial } => independence(connection1, connection2, polynomial, cli),
        Command::BottTu { model, polynomial, samples } => bott_tu(model, polynomial, *samples, cli.seed),
        Command::Holonomy { bundle, object } => holonomy(bundle, object),
        Command::Cohomology { path } => cohomology(path, cli),
    }
}

fn validate(paths: &[PathBuf], cli: &Cli) -> Result<Report> {
    if paths.is_empty() {
        return Err(Error::Parse("validate needs at least one file".into()));
    }
    let degree_bound = cli.degree_bound.unwrap_or(8);
    let level_bound = cli.level_bound.unwrap_or(4);
    let mut results = Vec::new();
    let mut all = true;
    for path in paths {
        let doc = load(path)?;
        let kind = doc.kind();
        let (passed, detail) = match validate_document(doc, degree_bound, level_bound) {
            Ok(r) => r,
            Err(e) if exit_code(&e) == 2 => return Err(e),
            Err(e) => (false, e.to_string()),
        };
        all &= passed;
        results.push(json!({ "path": path.display().to_string(), "kind": kind, "passed": passed, "detail": detail }));
    }
    Ok(Report::new(json!({ "command": "validate", "passed": all, "results": results }), all))
}

fn validate_document(doc: Document, degree_bound: u32, level_bound: usize) -> Result<(bool, String)> {
    Ok(match doc {
        Document::LieAlgebra(l) => {
            let lie = l.build()?;
            (true, format!("antisymmetry and Jacobi hold in dimension {}", lie.dim()))
        }
        Document::Weil(w) => {
            let alg = weil_algebra(&w.lie.build()?);
            let r = alg.validate_presentation(degree_bound);
            let conn = is_connection(&alg, &canonical_connection(&alg))?;
            let ok = r.passed && conn.is_connection;
            let detail = match (r.first_failure, conn.failure) {
                (Some(f), _) | (None, Some(f)) => f,
                (None, None) => format!("{} monomials through degree {degree_bound}; η is a connection", r.monomials_checked),
            };
            (ok, detail)
        }
        Document::GdAlgebra(g) => {
            let r = g.build()?.validate_presentation(degree_bound);
            let detail = r.first_failure.unwrap_or_else(|| format!("{} monomials through degree {degree_bound}", r.monomials_checked));
            (r.passed, detail)
        }
        Document::InvariantPolynomial(p) => match &p.lie {
            Some(l) => {
                let f = p.build(&l.build()?)?;
                (true, format!("invariant of degree {}", f.degree()))
            }
            None => (true, "no Lie algebra given; invariance is checked on use".into()),
        },
        Document::Connection(c) => {
            let (_, pc) = c.build()?;
            let b = check_bianchi(&pc);
            (b.holds, if b.holds { "connection on level 0; Bianchi identity holds".into() } else { "Bianchi identity fails".into() })
        }
        Document::LieAutomorphism(m) => {
            let m = m.build()?;
            let square = m.iter().all(|r| r.len() == m.len());
            let invertible = square && crate::lie::invert(&m).is_some();
            (invertible, if invertible { "invertible".into() } else { "matrix is not square and invertible".into() })
        }
        Document::BottTu(b) => {
            let (g, h, c) = b.build()?;
            let (a, theta) = product_model(&g, &h, &c)?;
            let r = bott_tu_connection(&a, &theta)?.check()?;
            let ok = r.g_connection && r.h_basic;
            (ok, r.failure.unwrap_or_else(|| "Ξ is a G-connection and H-basic".into()))
        }
        Document::Groupoid(g) => {
            let g = g.build()?;
            let n = nerve(&g, level_bound);
            n.check_identities()?;
            for level in 0..level_bound.saturating_sub(1) {
                for p in 0..n.size(level) {
                    let mut c = Cochain::zero(&n, level);
                    c.values[p] = num::One::one();
                    if !coboundary(&n, &coboundary(&n, &c)).is_zero() {
                        return Ok((false, format!("∂² ≠ 0 at level {level}")));
                    }
                }
            }
            (true, format!("groupoid axioms, nerve identities and ∂² = 0 through level {level_bound}"))
        }
        Document::Bundle(b) => {
            let b = b.build()?;
            (true, format!("ψ is a functor to a group of order {}", b.group.order()))
        }
        Document::Cocycle(c) => {
            let host = c.connection.host()?;
            let x = bigraded_from_doc(&host.simplicial, &c.levels)?;
            let closed = host.simplicial.delta(&x).is_zero();
            (closed, if closed { "δ-closed".into() } else { "not δ-closed".into() })
        }
    })
}

fn chern_weil(connection: &Path, polynomial: &Path, construction: Construction, expect_level0: bool) -> Result<Report> {
    let cdoc = connection_doc(connection)?;
    let (_, pc) = cdoc.build()?;
    let f = polynomial_doc(polynomial)?.build(&pc.lie())?;
    let (z, equal) = match construction {
        Construction::Fat => (z_theta_fat(&pc, &f)?, None),
        Construction::Simplicial => (z_theta_simplicial(&pc, &f)?, None),
        Construction::Both => {
            let a = z_theta_fat(&pc, &f)?;
            let b = z_theta_simplicial(&pc, &f)?;
            let eq = a == b;
            (a, Some(eq))
        }
    };
    let support = z.levels();
    let level0_ok = !expect_level0 || support.iter().all(|&n| n == 0);
    let passed = equal.unwrap_or(true) && level0_ok;
    let cocycle = Document::Cocycle(CocycleDoc { connection: cdoc, levels: bigraded_to_doc(&z) });
    let value = json!({
        "command": "chern-weil",
        "construction": format!("{construction:?}").to_lowercase(),
        "equal": equal,
        "support": support,
        "level0_only": support.iter().all(|&n| n == 0),
        "closed": pc.host().delta(&z).is_zero(),
        "cocycle": cocycle,
    });
    Ok(Report::new(value, passed).with_math("z_\\theta(f)", latex_bigraded(&z)))
}

fn bianchi(connection: &Path) -> Result<Report> {
    let (_, pc) = connection_doc(connection)?.build()?;
    let r = check_bianchi(&pc);
    let value = json!({
        "command": "bianchi",
        "holds": r.holds,
        "connection_case": total_curvature(&pc).is_connection_case(),
        "residual": r.residual.iter().map(levels_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(value, r.holds))
}

fn functoriality(connection: &Path, polynomial: &Path, automorphism: Option<&Path>) -> Result<Report> {
    let (host, pc) = connection_doc(connection)?.build()?;
    let f = polynomial_doc(polynomial)?.build(&pc.lie())?;
    let mut checks = Vec::new();
    let mut all = true;
    let mut record = |name: &str, holds: bool| {
        all &= holds;
        checks.push(json!({ "map": name, "holds": holds }));
    };
    record("identity", check_functoriality(&SimplicialHom::identity(pc.host()), &pc, &f, None)?.holds);
    if host.kind == HostKind::WeilPair {
        let phi = collapse_map(pc.host())?;
        record("collapse", check_functoriality(&phi, &pc, &f, None)?.holds);
    }
    if let Some(path) = automorphism {
        let m = expect_kind(path, "lie_automorphism", |d| match d {
            Document::LieAutomorphism(m) => Some(m),
            _ => None,
        })?
        .build()?;
        if host.kind != HostKind::WeilTower {
            return Err(Error::Parse("automorphism maps need a weil_tower host".into()));
        }
        let (phi, twist) = lie_automorphism_map(&pc, &m)?;
        record("automorphism", check_functoriality(&phi, &pc, &f, Some(&twist))?.holds);
    }
    Ok(Report::new(json!({ "command": "functoriality", "checks": checks }), all))
}

fn independence(c1: &Path, c2: &Path, polynomial: &Path, cli: &Cli) -> Result<Report> {
    let d1 = connection_doc(c1)?;
    let d2 = connection_doc(c2)?;
    let host = d1.host()?;
    let pc1 = d1.build_on(&host)?;
    let pc2 = d2.build_on(&host)?;
    let f = polynomial_doc(polynomial)?.build(&host.lie)?;
    let top = 2 * f.degree();
    let window = Window {
        level_bound: cli.level_bound.unwrap_or(top as usize),
        degree_bound: cli.degree_bound.unwrap_or(top),
    };
    let base = json!({ "command": "independence", "level_bound": window.level_bound, "degree_bound": window.degree_bound });
    match certify_connection_independence(&pc1, &pc2, &f, window) {
        Ok(x) => {
            let diff = z_theta_fat(&pc1, &f)?.sub(&z_theta_fat(&pc2, &f)?);
            let verified = host.simplicial.delta(&x) == diff;
            let mut value = base;
            value["status"] = json!("certified");
            value["difference_is_zero"] = json!(diff.is_zero());
            value["verified"] = json!(verified);
            value["primitive"] = levels_json(&x);
            Ok(Report::new(value, verified).with_math("x", latex_bigraded(&x)))
        }
        Err(e @ (Error::WindowIncomplete(_) | Error::Inconsistent)) => {
            let mut value = base;
            value["status"] = json!(if matches!(e, Error::Inconsistent) { "no_primitive_in_window" } else { "window_incomplete" });
            value["message"] = json!(e.to_string());
            Ok(Report::new(value, false))
        }
        Err(e) => Err(e),
    }
}

fn bott_tu(model: &Path, polynomial: &Path, samples: usize, seed: u64) -> Result<Report> {
    let doc = expect_kind(model, "bott_tu", |d| match d {
        Document::BottTu(b) => Some(b),
        _ => None,
    })?;
    let (g, h, c) = doc.build()?;
    let (a, theta) = product_model(&g, &h, &c)?;
    let bt = bott_tu_connection(&a, &theta)?;
    let f = polynomial_doc(polynomial)?.build(&g)?;
    let check = bt.check()?;
    let total = bt.total();
    let s = bt.simplicial();

    let mut rng = sample::rng(seed);
    let mut bases = Vec::new();
    for degree in 1..=3 {
        let basis = total.basic_subspace_in(&[H], degree)?;
        if !basis.is_empty() {
            bases.push(basis);
        }
    }
    let mut checked = 0;
    let mut chain_map = true;
    if !bases.is_empty() {
        while checked < samples {
            let basis = &bases[checked % bases.len()];
            let x = sample::combination(total.table(), basis, &mut rng);
            let kx = bt.k_map(&x);
            chain_map &= s.is_basic_in(H, &kx) && bt.k_map(&total.d(&x)) == s.delta(&kx);
            checked += 1;
        }
    }
    let z = bt.z_bt(&f)?;
    let kz = bt.k_map(&z);
    let closed = s.delta(&kz).is_zero();
    let passed = check.g_connection && check.h_basic && chain_map && closed;
    let value = json!({
        "command": "bott-tu",
        "g_connection": check.g_connection,
        "h_basic": check.h_basic,
        "failure": check.failure,
        "seed": seed,
        "chain_map_samples": checked,
        "chain_map": chain_map,
        "z_bt": element_to_doc(&z),
        "k_of_z_bt": levels_json(&kz),
        "k_of_z_bt_closed": closed,
    });
    Ok(Report::new(value, passed).with_math("z_{BT}(f)", latex_element(&z)).with_math("K(z_{BT}(f))", latex_bigraded(&kz)))
}

fn holonomy(bundle: &Path, object: &str) -> Result<Report> {
    let b = expect_kind(bundle, "bundle", |d| match d {
        Document::Bundle(b) => Some(b),
        _ => None,
    })?
    .build()?;
    let x = b.base.object_index(object).ok_or_else(|| Error::Groupoid(format!("object {object:?} not found")))?;
    let rep = holonomy_rep(&b, x)?;
    let arrows = b.base.arrows();
    let table: Vec<Value> = rep.iter().map(|&(a, g)| json!({ "arrow": arrows[a].id, "holonomy": b.group.names()[g] })).collect();
    let trivial = rep.iter().all(|&(_, g)| g == b.group.identity());
    let value = json!({
        "command": "holonomy",
        "object": object,
        "vertex_group": rep.iter().map(|&(a, _)| arrows[a].id.clone()).collect::<Vec<_>>(),
        "table": table,
        "trivial": trivial,
    });
    Ok(Report::new(value, true))
}

fn cohomology(path: &Path, cli: &Cli) -> Result<Report> {
    let mut dims = Vec::new();
    match load(path)? {
        Document::Groupoid(g) => {
            let g = g.build()?;
            let level_bound = cli.level_bound.unwrap_or(4);
            let n = nerve(&g, level_bound);
            let c = GroupoidComplex { nerve: &n };
            for k in 0..level_bound as u32 {
                let h = cohomology_window(&c, k)?;
                dims.push(json!({ "degree": k, "dimension": h.dimension }));
            }
        }
        Document::Connection(c) => {
            let host: Host = c.host()?;
            let level_bound = cli.level_bound.unwrap_or(3);
            let degree_bound = cli.degree_bound.unwrap_or(3);
            let w = SimplicialWindow::new(&host.simplicial, level_bound, degree_bound).basic(0);
            for k in 0..(level_bound as u32).min(degree_bound) {
                let h = cohomology_window(&w, k)?;
                dims.push(json!({ "degree": k, "dimension": h.dimension }));
            }
        }
        other => return Err(Error::Parse(format!("{}: cohomology needs a groupoid or connection document, found {}", path.display(), other.kind()))),
    }
    Ok(Report::new(json!({ "command": "cohomology", "degrees": dims }), true))
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('{', "\\{").replace('}', "\\}").replace('#', "\\#").replace('%', "\\%").replace('&', "\\&").replace('$', "\\$")
}

fn latex_value(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            out.push_str("\\begin{description}\n");
            for (k, x) in map {
                out.push_str(&format!("\\item[{}] ", latex_escape(k)));
                latex_value(x, out);
            }
            out.push_str("\\end{description}\n");
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(|x| latex_escape(&scalar(x))).collect();
            out.push_str(&format!("[{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("\\begin{itemize}\n");
            for x in items {
                // braces stop a leading '[' being read as an item label
                out.push_str("\\item{} ");
                latex_value(x, out);
            }
            out.push_str("\\end{itemize}\n");
        }
        x => {
            out.push_str(&latex_escape(&scalar(x)));
            out.push('\n');
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_latex(r: &Report) -> String {
    let mut out = String::new();
    let mut summary = r.value.clone();
    // term lists are shown as formulas instead
    if let Value::Object(map) = &mut summary {
        for key in ["cocycle", "primitive", "z_bt", "k_of_z_bt"] {
            map.remove(key);
        }
    }
    latex_value(&summary, &mut out);
    for (label, formula) in &r.math {
        out.push_str(&format!("\\[ {label} = {formula} \\]\n"));
    }
    out
}
