//! Command-line front end: table reproduction, brackets, classification,
//! family verification and Maurer–Cartan checks.

mod classify;
mod render;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use poissonlab::hopf::{hopf_family_by_name, verify_hopf_family, HopfFamilyReport};
use poissonlab::products::{ep1_mc_solution, tp1_mc_solution, verify_product_family, McSolution, Tp1PoissonClass};
use poissonlab::report::{self, HOPF_FAMILIES, RULED_FAMILIES};
use poissonlab::arith::Poly;
use poissonlab::syntax::{eval, infer_chart, parse};

pub use classify::classify;

pub const DEGREE_CAP_VAR: &str = "POISSONLAB_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(name = "poissonlab", version, about = "Exact Poisson deformation calculus on complex surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce a cohomology / obstructedness table
    Tables {
        #[command(subcommand)]
        table: Table,
    },
    /// Print the Schouten bracket of two fields
    Bracket {
        /// first field, e.g. `z^2*@z^@w`
        a: String,
        /// second field
        b: String,
        /// leading chart coordinates, comma separated
        #[arg(long, value_delimiter = ',')]
        chart: Vec<String>,
    },
    /// Classify a Poisson structure; prints a certificate as JSON
    Classify {
        /// `F<m>`, `hopf-<type>[:p]`, `ep1` or `tp1`
        manifold: String,
        /// the bivector in the manifold's standard chart
        #[arg(long)]
        poisson: String,
    },
    /// Verify an explicit Poisson analytic family
    VerifyFamily {
        /// `f2`..`f5`, `hopf-iv`, `hopf-iii`, `hopf-iia`, `hopf-iib`, `hopf-iic`, `ep1` or `tp1`
        name: String,
        /// exponent for Hopf types III and IIa
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Maurer–Cartan defect of a family
    McCheck {
        /// same names as `verify-family`
        name: String,
        /// exponent for Hopf types III and IIa
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// All tables and family suites as one JSON document
    Report {
        /// sweep the ruled surfaces F_0..F_{m_max}
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        /// exponent for Hopf types III and IIa
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
}

#[derive(Debug, Clone, Copy, Args)]
#[group(multiple = false)]
pub struct Format {
    /// machine-readable JSON
    #[arg(long)]
    pub json: bool,
    /// Markdown table (the default)
    #[arg(long)]
    pub md: bool,
}

#[derive(Debug, Subcommand)]
pub enum Table {
    /// dim ℍ² and verdicts for representatives of each stratum on F_0..F_{m_max}
    Ruled {
        /// largest m in the sweep
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        #[command(flatten)]
        format: Format,
    },
    /// invariant fields, hypercohomology and verdicts on primary Hopf surfaces
    Hopf {
        /// truncation degree (default: `p + 3`, or the env override)
        #[arg(long)]
        degree: Option<u32>,
        /// exponent for Hopf types III and IIa
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[command(flatten)]
        format: Format,
    },
    /// E×P¹, T×P¹ and complex tori
    Products {
        #[command(flatten)]
        format: Format,
    },
}

/// Text to print and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Explicit flag, else the environment override, else the per-type default.
pub fn degree_cap(flag: Option<u32>) -> Result<Option<u32>> {
    let d = match flag {
        Some(d) => Some(d),
        None => match std::env::var(DEGREE_CAP_VAR) {
            Ok(s) => Some(s.trim().parse().with_context(|| format!("{DEGREE_CAP_VAR}={s}"))?),
            Err(_) => None,
        },
    };
    if let Some(d) = d {
        if d < 3 {
            bail!("truncation degree must be at least 3, got {d}");
        }
    }
    Ok(d)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Tables { table } => tables(table),
        Command::Bracket { a, b, chart } => bracket(a, b, chart).map(Outcome::ok),
        Command::Classify { manifold, poisson } => Ok(Outcome::ok(classify(manifold, poisson)?.to_json())),
        Command::VerifyFamily { name, p, json } => verify_family(name, *p, *json),
        Command::McCheck { name, p } => mc_check(name, *p),
        Command::Report { m_max, p } => Ok(Outcome::ok(report::to_json(&report::full_report(*m_max, *p)?))),
    }
}

fn tables(t: &Table) -> Result<Outcome> {
    let text = match t {
        Table::Ruled { m_max, format } => {
            let rows = report::ruled_table(*m_max)?;
            if format.json {
                report::to_json(&rows)
            } else {
                render::ruled_md(&rows)
            }
        }
        Table::Hopf { degree, p, format } => {
            let degree = degree_cap(*degree)?;
            let rows = render::hopf_rows(*p, degree)?;
            if format.json {
                report::to_json(&rows)
            } else {
                render::hopf_md(&rows)
            }
        }
        Table::Products { format } => {
            let tables = report::product_tables()?;
            if format.json {
                report::to_json(&tables)
            } else {
                render::products_md(&tables)
            }
        }
    };
    Ok(Outcome::ok(text))
}

pub fn bracket(a: &str, b: &str, chart: &[String]) -> Result<String> {
    let (ea, eb) = (parse(a)?, parse(b)?);
    let hint: Vec<&str> = chart.iter().map(String::as_str).collect();
    let ch = infer_chart(&[&ea, &eb], &hint, &[]);
    Ok(eval(&ea, &ch)?.schouten(&eval(&eb, &ch)?)?.to_string())
}

fn lines(checks: &[String]) -> String {
    checks.iter().map(|c| format!("{c}\n")).collect()
}

fn verify_family(name: &str, p: u32, json: bool) -> Result<Outcome> {
    let (ok, checks) = if RULED_FAMILIES.contains(&name) {
        ruled_checks(name)?
    } else if HOPF_FAMILIES.contains(&name) {
        let HopfFamilyReport { ok, checks, .. } = verify_hopf_family(&hopf_family_by_name(name, p)?)?;
        (ok, checks)
    } else if name == "ep1" || name == "tp1" {
        let r = verify_product_family(name)?;
        (r.ok, r.checks)
    } else {
        bail!("unknown family `{name}`");
    };
    let head = format!("{name}: {}", if ok { "pass" } else { "FAIL" });
    let text = if json {
        serde_json::to_string_pretty(&serde_json::json!({ "family": name, "ok": ok, "checks": checks }))?
    } else {
        format!("{head}\n{}", lines(&checks))
    };
    Ok(Outcome { text, ok })
}

fn ruled_checks(name: &str) -> Result<(bool, Vec<String>)> {
    let row = match report::ruled_family_row(name) {
        Ok(r) => r,
        Err(e) => return Ok((false, vec![format!("FAIL: {e}")])),
    };
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let rank_ok = row.ks_rank == row.h1_dim;
    let deleted_fails = row.without_corrections != "verifies";
    Ok((
        rank_ok && deleted_fails,
        vec![
            format!("pass: Λ on U2 = ({})*(@zp^@xip)", row.lambda_u2),
            format!("{}: Kodaira-Spencer rank {} onto dim ℍ¹ = {}", mark(rank_ok), row.ks_rank, row.h1_dim),
            format!("{}: without corrections: {}", mark(deleted_fails), row.without_corrections),
        ],
    ))
}

fn product_solution(name: &str) -> Result<McSolution> {
    let s = Poly::sym;
    Ok(match name {
        "ep1" => ep1_mc_solution(&s("A"), &s("B"), &s("C"), None)?,
        "tp1" => tp1_mc_solution(&Tp1PoissonClass::mixed(s("D"), s("A"), s("B"), s("C"), s("k")), None)?,
        _ => bail!("no Maurer–Cartan solution named `{name}`"),
    })
}

fn mc_check(name: &str, p: u32) -> Result<Outcome> {
    if RULED_FAMILIES.contains(&name) || HOPF_FAMILIES.contains(&name) {
        // on a surface the defect of a bivector family is [Λ_t, Λ_t]
        let (ok, checks) = if HOPF_FAMILIES.contains(&name) {
            let fam = hopf_family_by_name(name, p)?;
            let l = poissonlab::mvf::MultiVector::from_mask(&poissonlab::hopf::HopfType::chart(), 0b11, fam.lambda);
            let d = l.schouten(&l)?;
            (d.is_zero(), vec![format!("[Λ_t, Λ_t] = {d}")])
        } else {
            ruled_checks(name)?
        };
        return Ok(Outcome { text: format!("{name}\n{}", lines(&checks)), ok });
    }
    let sol = product_solution(name)?;
    let [d0, d1, d2] = sol.defect_parts()?;
    let ok = d0.is_zero() && d1.is_zero() && d2.is_zero();
    let mut out = vec![
        format!("bivector part: {d0}"),
        format!("(0,1) part: {d1}"),
        format!("(0,2) part: {d2}"),
    ];
    for (c, _) in &sol.corrections {
        out.push(format!("without {c}: {}", sol.defect_without(c)?));
    }
    Ok(Outcome { text: format!("{name}: defect {}\n{}", if ok { "0" } else { "nonzero" }, lines(&out)), ok })
}
