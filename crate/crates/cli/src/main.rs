use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liespectra::document::{self, AlgebraDocument};
use liespectra::field::parse_gauss;
use liespectra::lie::merge_ctx;
use liespectra::report::{self, ReportJson};
use liespectra::spectral::{self, char_poly, linear_factorize};
use liespectra::{catalog, Error, FieldElement, LieAlgebra, TowerContext};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "liespectra", version, about = "Spectral invariants of Lie algebras in exact arithmetic")]
struct Cli {
    /// Output format; `dsl` only differs from `text` for `catalog show`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum number of square roots adjoined while splitting spectra.
    #[arg(long, global = true)]
    tower_depth: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dsl,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry and the Jacobi identity.
    Validate { file: PathBuf },
    /// Characteristic polynomial of the adjoint pencil.
    Charpoly {
        file: PathBuf,
        /// Strip all factors of z0.
        #[arg(long)]
        reduced: bool,
    },
    /// Linear factors of the characteristic polynomial.
    Factor { file: PathBuf },
    /// Spectral matrix, its rank, the nilradical and k (solvable algebras).
    Spectral { file: PathBuf },
    /// Betti numbers of the eigen-variety complement.
    Poincare { file: PathBuf },
    /// Every invariant at once.
    Invariants { file: PathBuf },
    /// Look for an invariant telling two algebras apart.
    Compare { a: PathBuf, b: PathBuf },
    /// Change basis by the rows of a matrix.
    Transform {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        check_aut: bool,
        #[arg(long)]
        check_unitary: bool,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Representations.
    Rep {
        #[command(subcommand)]
        which: RepKind,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// `key=value` with a rational or Gaussian value.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

#[derive(Subcommand)]
enum RepKind {
    /// Irreducible (m+1)-dimensional representation of sl(2).
    Sl2 {
        #[arg(long)]
        m: usize,
        /// Also compare with the product formula.
        #[arg(long)]
        closed_form: bool,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
    file: Option<String>,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            kind: error_kind(&err),
            message: err.to_string(),
            code: if err.is_domain_error() { 1 } else { 2 },
            file: None,
        }
    }
}

type Outcome = Result<(Output, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        kind: "io",
        message: e.to_string(),
        code: 2,
        file: Some(path.display().to_string()),
    })
}

fn with_path<T>(path: &Path, r: liespectra::Result<T>) -> Result<T, Failure> {
    r.map_err(|err| Failure {
        file: Some(path.display().to_string()),
        ..err.into()
    })
}

struct Session {
    format: Format,
    depth: Option<usize>,
}

impl Session {
    fn json(&self) -> bool {
        self.format == Format::Json
    }

    fn document(&self, path: &Path) -> Result<AlgebraDocument, Failure> {
        with_path(path, document::parse_auto(&read(path)?))
    }

    fn load(&self, path: &Path) -> Result<LieAlgebra, Failure> {
        let alg = with_path(path, self.document(path)?.to_algebra())?;
        self.deepen(alg)
    }

    fn deepen(&self, alg: LieAlgebra) -> Result<LieAlgebra, Failure> {
        match self.depth {
            Some(d) => Ok(alg.embed_into(&alg.ctx().clone().set_max_depth(d))?),
            None => Ok(alg),
        }
    }

    fn emit<T: serde::Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Output {
        if self.json() {
            Output::Json(serde_json::to_value(value).expect("serializable"))
        } else {
            Output::Text(text())
        }
    }

    fn run(&self, cmd: Command) -> Outcome {
        match cmd {
            Command::Validate { file } => {
                let doc = self.document(&file)?;
                let alg = with_path(&file, doc.to_algebra_unchecked())?;
                let v = alg.validate();
                let out = report::validate_json(alg.dim(), &v);
                let code = if out.valid { 0 } else { 2 };
                let text = || {
                    if v.is_empty() {
                        format!("ok: {} (dim {})\n", alg.name(), alg.dim())
                    } else {
                        v.iter().map(|x| format!("{x}\n")).collect()
                    }
                };
                Ok((self.emit(&out, text), code))
            }
            Command::Charpoly { file, reduced } => {
                let cp = char_poly(&self.load(&file)?)?;
                let out = report::charpoly_json(&cp, reduced);
                Ok((self.emit(&out, || format!("{}\n", out.charpoly)), 0))
            }
            Command::Factor { file } => {
                let alg = self.load(&file)?;
                let cp = char_poly(&alg)?;
                let (_, f) = linear_factorize(&cp, &alg.adjoint(), alg.ctx())?;
                let out = report::factorization_json(&f);
                let text = || {
                    let mut s: String = out
                        .factors
                        .iter()
                        .map(|x| format!("({})^{}\n", x.coeffs.join(", "), x.mult))
                        .collect();
                    if !out.complete {
                        s.push_str(&format!("residual: {}\n", out.residual));
                    }
                    s
                };
                Ok((self.emit(&out, text), 0))
            }
            Command::Spectral { file } => {
                let r = self.solvable_report(&file)?;
                let out = json!({
                    "spectral_matrix": r.spectral_matrix,
                    "rank_lambda": r.rank_lambda,
                    "k": r.k,
                    "nilradical": r.nilradical,
                    "nilradical_dim": r.nilradical_dim,
                });
                Ok((self.emit(&out, || r.to_text()), 0))
            }
            Command::Poincare { file } => {
                let r = self.solvable_report(&file)?;
                let p = r.poincare.unwrap_or_default();
                let out = if self.json() {
                    format!("{}\n", serde_json::to_string(&p).expect("serializable"))
                } else {
                    let coeffs = p.iter().map(ToString::to_string).collect::<Vec<_>>();
                    format!("[{}]\n", coeffs.join(", "))
                };
                Ok((Output::Text(out), 0))
            }
            Command::Invariants { file } => {
                let r = report::report(&self.load(&file)?)?;
                Ok((self.emit(&r, || r.to_text()), 0))
            }
            Command::Compare { a, b } => {
                let ra = spectral::invariant_report(&self.load(&a)?)?;
                let rb = spectral::invariant_report(&self.load(&b)?)?;
                let out = report::compare_json(spectral::compare(&ra, &rb)?);
                let text = || match out.invariant {
                    Some(inv) => format!(
                        "distinguished by {inv}: {} vs {}\n",
                        out.a.as_deref().unwrap_or(""),
                        out.b.as_deref().unwrap_or("")
                    ),
                    None => "indistinguishable by the computed invariants\n".to_string(),
                };
                Ok((self.emit(&out, text), 0))
            }
            Command::Transform {
                file,
                matrix,
                check_aut,
                check_unitary,
            } => self.transform(&file, &matrix, check_aut, check_unitary),
            Command::Catalog { action } => self.catalog(action),
            Command::Rep {
                which: RepKind::Sl2 { m, closed_form },
            } => {
                let out = report::sl2_rep_json(m, closed_form)?;
                let text = || {
                    let mut s = format!("Q(z) = {}\n", out.charpoly);
                    if let Some(ok) = out.matches_closed_form {
                        s.push_str(&format!("matches closed form: {ok}\n"));
                    }
                    s
                };
                let code = if out.matches_closed_form == Some(false) { 1 } else { 0 };
                Ok((self.emit(&out, text), code))
            }
        }
    }

    fn solvable_report(&self, file: &Path) -> Result<ReportJson, Failure> {
        let r = report::report(&self.load(file)?)?;
        if !r.solvable {
            return Err(Error::NotFullyFactorable {
                residual_degree: r.residual_degree as usize,
            }
            .into());
        }
        Ok(r)
    }

    fn transform(&self, file: &Path, matrix: &Path, check_aut: bool, check_unitary: bool) -> Outcome {
        let alg = self.load(file)?;
        let b = with_path(matrix, document::parse_matrix(&read(matrix)?))?;
        let alg = if b.entries().all(FieldElement::is_rational) {
            alg
        } else {
            let ctx = merge_ctx(alg.ctx(), &TowerContext::gaussian())?;
            alg.embed_into(&ctx)?
        };
        let new = with_path(matrix, alg.change_basis(&b))?;
        let doc = AlgebraDocument::from_algebra(&new)?;
        let cp = char_poly(&new)?;
        let substituted = char_poly(&alg)?.q.substitute_linear(&b)?;
        let mut out = json!({
            "algebra": serde_json::from_str::<Value>(&doc.to_json()).expect("valid json"),
            "charpoly": cp.q.to_string(),
            "charpoly_matches_substitution": cp.q == substituted,
        });
        let mut text = doc.to_dsl();
        text.push_str(&format!("# Q(z) = {}\n", cp.q));
        if check_aut {
            let aut = alg.is_automorphism(&b);
            out["automorphism"] = json!(aut);
            text.push_str(&format!("# automorphism: {aut}\n"));
        }
        if check_unitary {
            let unitary = b.is_unitary();
            out["unitary"] = json!(unitary);
            text.push_str(&format!("# unitary: {unitary}\n"));
        }
        let output = if self.json() {
            Output::Json(out)
        } else {
            Output::Text(text)
        };
        Ok((output, 0))
    }

    fn catalog(&self, action: CatalogAction) -> Outcome {
        match action {
            CatalogAction::List => {
                let entries = catalog::entries();
                let text = || {
                    entries
                        .iter()
                        .map(|e| {
                            let ps: Vec<String> = e
                                .params
                                .iter()
                                .map(|p| format!("{} ({})", p.name, p.constraint))
                                .collect();
                            let mut line = e.name.to_string();
                            if !ps.is_empty() {
                                line.push_str(&format!(" [{}]", ps.join(", ")));
                            }
                            if !e.aliases.is_empty() {
                                line.push_str(&format!(" alias {}", e.aliases.join(", ")));
                            }
                            format!("{line}: {}\n", e.description)
                        })
                        .collect()
                };
                Ok((self.emit(&entries, text), 0))
            }
            CatalogAction::Show { name, params } => {
                let params = parse_params(&params)?;
                let alg = catalog::get(&name, &params)?;
                let doc = AlgebraDocument::from_algebra(&alg)?;
                let out = match self.format {
                    Format::Json => Output::Text(format!("{}\n", doc.to_json())),
                    Format::Text | Format::Dsl => Output::Text(doc.to_dsl()),
                };
                Ok((out, 0))
            }
        }
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, FieldElement>, Failure> {
    let ctx = TowerContext::gaussian();
    let mut out = BTreeMap::new();
    for p in raw {
        let bad = || {
            Failure::from(Error::ParameterConstraintViolated(format!(
                "expected key=value with a rational or Gaussian value, got `{p}`"
            )))
        };
        let (k, v) = p.split_once('=').ok_or_else(bad)?;
        let g = parse_gauss(v.trim()).ok_or_else(bad)?;
        let x = ctx.gaussian_element(g.re, g.im)?;
        if out.insert(k.trim().to_string(), x).is_some() {
            return Err(Error::ParameterConstraintViolated(format!("parameter {k} given twice")).into());
        }
    }
    Ok(out)
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Consistency { .. } => "consistency",
        Error::NotFullyFactorable { .. } => "not_fully_factorable",
        Error::UnsupportedFieldExtension { .. } => "unsupported_field_extension",
        Error::TowerDepthExceeded { .. } => "tower_depth_exceeded",
        Error::DimensionLimitExceeded { .. } => "dimension_limit_exceeded",
        Error::ArrangementTooLarge { .. } => "arrangement_too_large",
        Error::InvalidAlgebra(_) => "invalid_algebra",
        Error::UnknownEntry(_) => "unknown_entry",
        Error::ParameterConstraintViolated(_) => "parameter_constraint_violated",
        Error::SingularMatrix => "singular_matrix",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::InternalInconsistency(_) => "internal_inconsistency",
        _ => "error",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let session = Session {
        format: cli.format,
        depth: cli.tower_depth,
    };
    match session.run(cli.command) {
        Ok((out, code)) => {
            match out {
                Output::Json(v) => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Output::Text(s) => print!("{s}"),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if session.json() {
                let mut v = json!({ "error": f.kind, "message": f.message });
                if let Some(file) = f.file {
                    v["file"] = json!(file);
                }
                eprintln!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                match f.file {
                    Some(file) => eprintln!("error: {file}: {}", f.message),
                    None => eprintln!("error: {}", f.message),
                }
            }
            ExitCode::from(f.code)
        }
    }
}
