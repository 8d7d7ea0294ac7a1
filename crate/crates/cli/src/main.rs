//! `unitri`: f-triangles, coefficient tables, h-vector application,
//! brute-force oracles and real-rootedness certification.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical discrepancy was found,
//! 2 usage or configuration error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unitri::colored::{q_table, ColoredError, DEFAULT_MAX_PERMS};
use unitri::poly::{self, Polynomial, Rational};
use unitri::rootcert::{check_assumptions, check_conclusions, is_real_rooted};
use unitri::scomplex::{
    extract_triangle, face_count_identity, gamma_nk, gamma_with_facets, interior_face_counts,
    local_h, relative_symmetry_check, simplex_facets_lex, subdivide, uniformity_check,
    SimplicialComplex, DEFAULT_MAX_FACES,
};
use unitri::transform::{
    self, audit_coeff_table, boundary_h, coeff_table_unchecked, p_poly_formula,
};
use unitri::triangles::{derive, validate, Catalog, FTriangle};

#[derive(Parser, Debug)]
#[command(
    name = "unitri",
    version,
    about = "Exact computations for uniform triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Catalog triangle.
    #[arg(long, global = true, value_enum)]
    catalog: Option<CatalogName>,
    /// f-triangle JSON file (instead of --catalog).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    s: Option<usize>,
    /// Triangle size.
    #[arg(long, global = true)]
    d: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run the strict feasibility checks too.
    #[arg(long, global = true)]
    strict: bool,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FACES)]
    max_faces: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PERMS)]
    max_perms: u64,
    /// Comma-separated h-vector, e.g. "1,1,1".
    #[arg(long, global = true)]
    hvec: Option<String>,
    /// Simplicial complex JSON file.
    #[arg(long, global = true)]
    complex: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an f-triangle with its derived triangles and validation.
    Triangle,
    /// Coefficient table p(n,k,j) with its audit.
    Coeffs,
    /// Apply the triangle to an h-vector or to a complex.
    Apply,
    /// Check the real-rootedness assumptions and conclusions.
    Certify,
    /// Compare against an explicit subdivision of the simplex.
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CatalogName {
    Trivial,
    Barycentric,
    Edgewise,
    Colored,
    Interval,
    Sdrs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Math(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

struct Source {
    triangle: FTriangle,
    catalog: Option<Catalog>,
}

impl Cli {
    fn source(&self, need: usize) -> Result<Source, Failure> {
        self.source_sized(need, need.max(1))
    }

    /// `need` is the smallest acceptable size; catalogs default to `default_d`.
    fn source_sized(&self, need: usize, default_d: usize) -> Result<Source, Failure> {
        match (&self.catalog, &self.json) {
            (Some(_), Some(_)) => Err(usage("give either --catalog or --json, not both")),
            (None, None) => Err(usage(
                "a triangle is required: --catalog NAME or --json PATH",
            )),
            (Some(name), None) => {
                let name = format!("{name:?}").to_lowercase();
                let catalog = Catalog::parse(&name, self.r, self.s).map_err(usage)?;
                let d = self.d.unwrap_or(default_d);
                if d < need {
                    return Err(usage(format!("--d {d} is smaller than --n {need}")));
                }
                let triangle = catalog.build(d).map_err(usage)?;
                Ok(Source {
                    triangle,
                    catalog: Some(catalog),
                })
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let triangle = FTriangle::from_json(&text).map_err(usage)?;
                if triangle.d < need {
                    return Err(usage(format!(
                        "triangle size {} is smaller than n = {need}",
                        triangle.d
                    )));
                }
                Ok(Source {
                    triangle,
                    catalog: None,
                })
            }
        }
    }

    fn need_n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| usage("--n is required"))
    }

    fn emit(&self, text: &str) -> CmdResult {
        match &self.out {
            Some(path) => {
                fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, value: &Value) -> CmdResult {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        self.emit(&text)
    }
}

fn strings(p: &Polynomial, len: usize) -> Vec<String> {
    p.padded(len).iter().map(poly::rational_to_string).collect()
}

fn rows_json(polys: &[Polynomial]) -> Value {
    json!(polys
        .iter()
        .enumerate()
        .map(|(n, p)| strings(p, n + 1))
        .collect::<Vec<_>>())
}

fn cmd_triangle(cli: &Cli) -> CmdResult {
    let need = cli.d.or(cli.n).unwrap_or(0);
    let src = cli.source_sized(need, need.max(6))?;
    let tri = &src.triangle;
    let report = validate(tri, cli.strict);
    let der = derive(tri);
    if cli.format == Some(Format::Csv) {
        let mut out = String::from("triangle,n,i,value\n");
        let tables: [(&str, Vec<Polynomial>); 5] = [
            ("f", (0..=tri.d).map(|n| tri.f_poly(n)).collect()),
            ("h", der.h.clone()),
            ("f_interior", der.f_interior.clone()),
            ("h_interior", der.h_interior.clone()),
            ("local_h", der.local_h.clone()),
        ];
        for (name, polys) in &tables {
            for (n, p) in polys.iter().enumerate() {
                for (i, c) in strings(p, n + 1).iter().enumerate() {
                    out.push_str(&format!("{name},{n},{i},{c}\n"));
                }
            }
        }
        cli.emit(&out)?;
    } else {
        cli.emit_json(&json!({
            "f_triangle": tri,
            "derived": {
                "h": rows_json(&der.h),
                "f_interior": rows_json(&der.f_interior),
                "h_interior": rows_json(&der.h_interior),
                "local_h": rows_json(&der.local_h),
            },
            "validation": report,
        }))?;
    }
    if report.passed() {
        eprintln!(
            "validation passed: {} rows of {}",
            report.rows_checked, tri.name
        );
        Ok(())
    } else {
        for v in &report.violations {
            match v.row {
                Some(r) => eprintln!("violation {} at row {r}: {}", v.check, v.detail),
                None => eprintln!("violation {}: {}", v.check, v.detail),
            }
        }
        Err(Failure::Math(format!(
            "{} violations",
            report.violations.len()
        )))
    }
}

fn cmd_coeffs(cli: &Cli) -> CmdResult {
    let n = cli.need_n()?;
    let src = cli.source(n)?;
    let audit = audit_coeff_table(&src.triangle, n).map_err(usage)?;
    if cli.format == Some(Format::Json) {
        cli.emit_json(&json!({ "table": audit.table, "matrix": audit.table.polys.iter().map(|p| strings(p, n + 1)).collect::<Vec<_>>(), "audit": { "passed": audit.passed(), "violations": audit.violations } }))?;
    } else {
        cli.emit(&audit.table.to_csv())?;
    }
    if audit.passed() {
        eprintln!("audit passed: nonnegativity, symmetry, row and column sums for n = {n}");
        Ok(())
    } else {
        for v in &audit.violations {
            eprintln!("violation {}: {}", v.check, v.detail);
        }
        Err(Failure::Math(format!(
            "{} audit violations",
            audit.violations.len()
        )))
    }
}

fn parse_hvec(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|t| poly::parse_rational(t.trim()).map_err(|e| usage(format!("--hvec: {e}"))))
        .collect()
}

fn cmd_apply(cli: &Cli) -> CmdResult {
    match (&cli.hvec, &cli.complex) {
        (Some(_), Some(_)) => Err(usage("give either --hvec or --complex, not both")),
        (None, None) => Err(usage("--hvec or --complex is required")),
        (Some(text), None) => {
            let hvec = parse_hvec(text)?;
            if hvec.is_empty() {
                return Err(usage("--hvec is empty"));
            }
            let n = hvec.len() - 1;
            let src = cli.source(n)?;
            let h = transform::apply_h(&src.triangle, &hvec, n).map_err(usage)?;
            cli.emit_json(&json!({
                "triangle": src.triangle.name,
                "n": n,
                "hvec": hvec.iter().map(poly::rational_to_string).collect::<Vec<_>>(),
                "h": strings(&h, n + 1),
            }))
        }
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let complex = SimplicialComplex::from_json(&text).map_err(usage)?;
            let n = complex.max_face_size();
            let hvec = complex.h_vector();
            let src = cli.source(n)?;
            let h = transform::apply_h(&src.triangle, &hvec, n).map_err(usage)?;
            let mut out = json!({
                "triangle": src.triangle.name,
                "n": n,
                "hvec": hvec.iter().map(poly::rational_to_string).collect::<Vec<_>>(),
                "h": strings(&h, n + 1),
            });
            let mut mismatch = None;
            if let Some(cat) = src.catalog {
                let sub = subdivide(&complex, cat, cli.max_faces).map_err(usage)?;
                let brute = sub.total.h_poly();
                out["brute_force_h"] = json!(strings(&brute, n + 1));
                out["agrees"] = json!(brute == h);
                if brute != h {
                    mismatch = Some(format!(
                        "formula {h} but explicit subdivision gives {brute}"
                    ));
                }
            }
            cli.emit_json(&out)?;
            match mismatch {
                Some(m) => Err(Failure::Math(m)),
                None => Ok(()),
            }
        }
    }
}

fn cmd_certify(cli: &Cli) -> CmdResult {
    let n = cli.need_n()?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let src = cli.source(n)?;
    let tri = &src.triangle;
    let assumptions = check_assumptions(tri, n).map_err(usage)?;
    let conclusions = check_conclusions(tri, n, cli.samples, cli.seed).map_err(usage)?;
    let hb = boundary_h(tri, n).map_err(usage)?;
    let boundary = is_real_rooted(&hb);
    let passed = assumptions.passed && conclusions.passed;
    cli.emit_json(&json!({
        "triangle": tri.name,
        "n": n,
        "samples": cli.samples,
        "seed": cli.seed,
        "assumptions": assumptions,
        "conclusions": conclusions,
        "boundary_h": { "polynomial": hb, "certificate": boundary },
        "passed": passed,
    }))?;
    if let Some(f) = assumptions.first_failure() {
        eprintln!("assumption fails at m = {}: {}", f.m, f.detail);
    }
    eprintln!("{}", conclusions.operator_real_rooted.summary);
    if passed {
        Ok(())
    } else {
        Err(Failure::Math("certification failed".into()))
    }
}

struct Checks(Vec<Value>);

impl Checks {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0
            .push(json!({ "check": name, "passed": passed, "detail": detail.into() }));
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|c| c["passed"] == json!(true))
    }
}

fn cmd_oracle(cli: &Cli) -> CmdResult {
    let n = cli.need_n()?;
    let src = cli.source(n)?;
    let cat = src.catalog.ok_or_else(|| {
        usage("oracle needs --catalog; JSON triangles have no explicit construction")
    })?;
    let tri = &src.triangle;
    let base = SimplicialComplex::simplex(n);
    let sub = subdivide(&base, cat, cli.max_faces).map_err(usage)?;
    let der = derive(tri);
    let mut checks = Checks(Vec::new());

    let uni = uniformity_check(&sub, tri).map_err(usage)?;
    checks.record(
        "uniformity",
        uni.passed(),
        format!(
            "{} faces, {} mismatches",
            uni.faces_checked,
            uni.mismatches.len()
        ),
    );
    let extracted = extract_triangle(&sub).map_err(usage)?;
    let same_rows = extracted.rows() == &tri.rows()[..=n];
    checks.record(
        "extracted_rows",
        same_rows,
        format!("{:?}", extracted.rows()),
    );
    let lh = local_h(&sub).map_err(usage)?;
    checks.record(
        "local_h",
        lh == der.local_h[n],
        format!("counted {lh}, triangle {}", der.local_h[n]),
    );
    let interior = interior_face_counts(&sub).map_err(usage)?;
    let interior_poly =
        Polynomial::from_ints(&interior.iter().map(|&c| c as i64).collect::<Vec<_>>());
    checks.record(
        "interior_faces",
        interior_poly == der.f_interior[n],
        format!("counted {interior_poly}, triangle {}", der.f_interior[n]),
    );
    checks.record(
        "face_count_identity",
        face_count_identity(&sub, tri),
        "total f-vector from interior counts",
    );

    let facets = simplex_facets_lex(n);
    for k in 0..=n {
        let gamma = gamma_nk(&sub, k).map_err(usage)?;
        let h = gamma.h_poly();
        let p = p_poly_formula(tri, n, k).map_err(usage)?;
        checks.record(
            &format!("gamma_{n}_{k}"),
            h == p,
            format!("f = {}, h = {h}, p = {p}", gamma.f_poly()),
        );
        if k > 0 && k < n {
            let other = gamma_with_facets(&sub, &facets[n - k..])
                .map_err(usage)?
                .h_poly();
            checks.record(
                &format!("gamma_{n}_{k}_other_choice"),
                other == h,
                format!("h = {other}"),
            );
        }
        let sym = relative_symmetry_check(&sub, &facets[..k]).map_err(usage)?;
        checks.record(
            &format!("relative_symmetry_{k}"),
            sym.holds,
            format!("reversed {}, complement {}", sym.reversed, sym.complement),
        );
    }

    let colors = match cat {
        Catalog::Barycentric => Some(1),
        Catalog::Colored { r } => Some(r),
        Catalog::Interval => Some(2),
        _ => None,
    };
    if let Some(r) = colors {
        match q_table(n, r, cli.max_perms) {
            Ok(q) => {
                let table = coeff_table_unchecked(tri, n).map_err(usage)?;
                let agree = (0..=n).all(|k| {
                    (0..=n).all(|j| table.entry(k, j) == Rational::from_integer(q[k][j].into()))
                });
                checks.record("colored_permutations", agree, format!("q table {q:?}"));
            }
            Err(ColoredError::CapExceeded { count, cap }) => {
                eprintln!("notice: permutation count {count} exceeds --max-perms {cap}; skipped");
            }
            Err(e) => return Err(usage(e)),
        }
    }

    let passed = checks.passed();
    cli.emit_json(&json!({
        "triangle": tri.name,
        "n": n,
        "checks": checks.0,
        "passed": passed,
    }))?;
    if passed {
        eprintln!("oracle passed for {cat}, n = {n}");
        Ok(())
    } else {
        Err(Failure::Math("oracle mismatch".into()))
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("UNITRI_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| usage(format!("UNITRI_THREADS={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(usage)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Triangle => cmd_triangle(&cli),
        Command::Coeffs => cmd_coeffs(&cli),
        Command::Apply => cmd_apply(&cli),
        Command::Certify => cmd_certify(&cli),
        Command::Oracle => cmd_oracle(&cli),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
