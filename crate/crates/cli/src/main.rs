//! `sperf`: command-line access to the classification toolkit.
//!
//! Exit codes: 0 when the command succeeds and any check it performs holds,
//! 1 when a check fails (a catalogue mismatch, a rejected certificate, a
//! lattice that is not strongly perfect), 2 on bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sperf::catalogue::{self, VerifyReport};
use sperf::format::{self, OutcomeFile};
use sperf_core::classify::{self, Claim, FilterSet, RsFilter};
use sperf_core::completion::{self, CompletionOptions, SearchMode};
use sperf_core::design::{self, Designs, Equation};
use sperf_core::enumerate::{self, EnumOptions, Pruning};
use sperf_core::rat::{self, Rat};
use sperf_core::thetalp::{self, LpStatus};
use sperf_core::Lattice;

#[derive(Parser)]
#[command(name = "sperf", version, about = "Exact tools for dual strongly perfect lattices")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, shells and theta series of a lattice.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Spherical design tests on minimal vectors.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Finite classification tables.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Exclusion tests.
    #[command(subcommand)]
    Exclude(ExcludeCmd),
    /// Spherical code bounds and |N_2| arithmetic.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Rescaling claims from design integrality.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Linear feasibility on cusp-form coefficients.
    #[command(subcommand)]
    Thetalp(ThetaCmd),
    /// Gram matrix completion searches.
    #[command(subcommand)]
    Gramsearch(GramCmd),
    /// The shipped lattices.
    #[command(subcommand)]
    Catalogue(CatalogueCmd),
}

/// A lattice JSON file, or `catalogue:NAME`.
#[derive(Args)]
struct LatticeArg {
    file: String,
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info(LatticeArg),
    Shells {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Norm bound, `p/q`.
        #[arg(long)]
        bound: String,
        /// Also list one vector per ± pair.
        #[arg(long)]
        vectors: bool,
    },
    Theta {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Highest exponent; `a(j)` counts vectors of norm `2j`.
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Design equations for test vectors given in dual-basis coordinates.
    Check {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Comma-separated `p/q` coordinates; default the first dual basis vector.
        #[arg(long)]
        alpha: Option<String>,
        /// Default the second dual basis vector.
        #[arg(long)]
        beta: Option<String>,
    },
    /// Whether the minimal vectors of the lattice and of its dual form 4-designs.
    StronglyPerfect(LatticeArg),
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Candidate `(r, s)` table for dimension 16.
    Rs {
        /// Filters to switch off, by name.
        #[arg(long, value_delimiter = ',')]
        disable: Vec<String>,
    },
    /// `(r, s, t)` table after the dual-pair integrality filter.
    DualPairs,
    /// Surviving `(s, t)` pairs of minimal type.
    MinimalType,
}

#[derive(Subcommand)]
enum ExcludeCmd {
    /// The quadratic in `b` built from the layer counts.
    Poly {
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Spherical code bound for angle cosine `a` in dimension `n`.
    Dgs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
    },
    /// `|N_2|` forced by `(r, s)`, and its upper bound for this `r`.
    N2 {
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Even,
    Integral,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is `c·(α, α)` even (or integral) for all dual vectors, given `min = m`?
    EvenScaling {
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: String,
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value = "even")]
        claim: ClaimArg,
    },
}

#[derive(Subcommand)]
enum ThetaCmd {
    Solve {
        file: PathBuf,
        /// Cut the system at this exponent.
        #[arg(long)]
        precision: Option<usize>,
        /// Write the outcome here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
        outcome: PathBuf,
        #[arg(long)]
        precision: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GramCmd {
    Run {
        file: PathBuf,
        /// Plain generate-and-test instead of pruned search.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        no_dedup: bool,
        #[arg(long, default_value_t = completion::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum CatalogueCmd {
    List,
    Verify {
        /// Entry name; all entries when omitted.
        name: Option<String>,
    },
}

/// Failure with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn parse_rat(field: &str, s: &str) -> Result<Rat, InputError> {
    rat::parse(s.trim()).map_err(|e| InputError(format!("{field}: {e}")))
}

fn parse_vec(field: &str, s: &str) -> Result<Vec<Rat>, InputError> {
    s.split(',').map(|x| parse_rat(field, x)).collect()
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_lattice(arg: &LatticeArg) -> Result<Lattice, InputError> {
    if let Some(name) = arg.file.strip_prefix("catalogue:") {
        return Ok(catalogue::entry(name)?.lattice);
    }
    Ok(format::parse_lattice(&read(Path::new(&arg.file))?)?)
}

fn show(x: &Rat) -> String {
    rat::show(x)
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let j = cli.json;
    match &cli.command {
        Command::Lattice(c) => lattice_cmd(j, c),
        Command::Design(c) => design_cmd(j, c),
        Command::Classify(c) => classify_cmd(j, c),
        Command::Exclude(ExcludeCmd::Poly { r, s, t, n }) => {
            let rep = classify::polynomial_method(&parse_rat("r", r)?, *s, *t, *n);
            let value = json!({
                "r": show(&rep.r), "s": rep.s, "t": rep.t, "n": rep.n,
                "n0": show(&rep.n0), "n1": show(&rep.n1), "n2": show(&rep.n2),
                "poly": [show(&rep.poly.c2), show(&rep.poly.c1), show(&rep.poly.c0)],
                "excluded": rep.excluded.map(|e| format!("{e:?}")),
                "degenerate": rep.degenerate,
                "witness_b": rep.witness_b.as_ref().map(show),
                "violations": rep.violations.iter().map(|v| format!("n{} {:?}", v.index, v.defect)).collect::<Vec<_>>(),
            });
            emit(j, value, || {
                let mut out = format!(
                    "r={} s={} t={}\nn0={} n1={} n2={}\nP(b) = {}\n",
                    rep.r, rep.s, rep.t, rep.n0, rep.n1, rep.n2, rep.poly
                );
                match (&rep.excluded, &rep.witness_b) {
                    (Some(e), Some(b)) => {
                        out += &format!("excluded ({e:?}): P({b}) = {} > 0", rep.poly.eval(b))
                    }
                    (Some(e), None) => out += &format!("excluded ({e:?}): {:?}", rep.violations),
                    (None, _) => out += "not excluded",
                }
                out
            });
            Ok(rep.verify())
        }
        Command::Bound(BoundCmd::Dgs { n, a }) => {
            let b = classify::dgs_code_bound(*n, &parse_rat("a", a)?)?;
            emit(j, json!({"n": n, "a": a, "bound": show(&b), "approx": rat::to_f64(&b)}), || {
                format!("{b} ≈ {:.4}", rat::to_f64(&b))
            });
            Ok(true)
        }
        Command::Bound(BoundCmd::N2 { r, s, n }) => {
            let r = parse_rat("r", r)?;
            let size = classify::n2_size(&r, *s, *n);
            let upper = classify::n2_upper_bound(&r, *n);
            emit(
                j,
                json!({"r": show(&r), "s": s, "n2": show(&size), "upper_bound": upper.as_ref().map(show)}),
                || {
                    let u = upper.as_ref().map_or("none".to_string(), show);
                    format!("|N_2| = {size}, upper bound {u}")
                },
            );
            Ok(true)
        }
        Command::Check(CheckCmd::EvenScaling { r, s, m, c, claim }) => {
            let claim = match claim {
                ClaimArg::Even => Claim::Even,
                ClaimArg::Integral => Claim::Integral,
            };
            let v = classify::even_scaling_check(
                &parse_rat("r", r)?,
                *s,
                &parse_rat("m", m)?,
                &parse_rat("c", c)?,
                claim,
            )?;
            let value = json!({
                "claim": v.claim.to_string(), "c": show(&v.c), "dual_min": show(&v.dual_min),
                "dual_min_admissible": v.dual_min_admissible, "verified": v.is_verified(),
                "witness": v.witness.as_ref().map(show),
                "classes": v.classes.iter().map(|k| json!({"q": k.q, "modulus": k.modulus, "residues": k.residues})).collect::<Vec<_>>(),
            });
            emit(j, value, || match &v.witness {
                None => format!("verified: {}·(α,α) is {} for every dual vector", v.c, v.claim),
                Some(x) => format!("refuted: admissible norm {x} gives {}·{x} = {}", v.c, &v.c * x),
            });
            Ok(v.is_verified())
        }
        Command::Thetalp(c) => theta_cmd(j, c),
        Command::Gramsearch(GramCmd::Run { file, exhaustive, no_dedup, budget }) => {
            let partial = format::parse_partial_gram(&read(file)?)?;
            let opts = CompletionOptions {
                mode: if *exhaustive { SearchMode::Exhaustive } else { SearchMode::Pruned },
                node_budget: *budget,
                dedup: !no_dedup,
                ..Default::default()
            };
            let rep = completion::complete(&partial, &opts)?;
            let value = json!({
                "completions": rep.completions.iter().map(format::matrix_strings).collect::<Vec<_>>(),
                "count": rep.completions.len(),
                "raw_count": rep.raw_count,
                "nodes": rep.nodes,
                "coeff_bound": rep.coeff_bound,
                "group_order": rep.group_order,
            });
            emit(j, value, || {
                let mut out = format!(
                    "{} completion(s) ({} before deduplication, group order {}), {} nodes, coefficient bound {}\n",
                    rep.completions.len(),
                    rep.raw_count,
                    rep.group_order,
                    rep.nodes,
                    rep.coeff_bound
                );
                for (i, m) in rep.completions.iter().enumerate() {
                    out += &format!("#{}\n{m}\n", i + 1);
                }
                out.trim_end().to_string()
            });
            Ok(true)
        }
        Command::Catalogue(CatalogueCmd::List) => {
            let names = catalogue::catalogue_list();
            emit(j, json!(names), || names.join("\n"));
            Ok(true)
        }
        Command::Catalogue(CatalogueCmd::Verify { name }) => {
            let names: Vec<String> = match name {
                Some(n) => vec![n.clone()],
                None => catalogue::catalogue_list().into_iter().map(String::from).collect(),
            };
            let reports: Vec<VerifyReport> =
                names.iter().map(|n| catalogue::catalogue_verify(n)).collect::<Result<_, _>>()?;
            emit(j, json!(reports), || reports.iter().map(verify_text).collect::<Vec<_>>().join("\n"));
            Ok(reports.iter().all(VerifyReport::passed))
        }
    }
}

fn verify_text(r: &VerifyReport) -> String {
    let m = &r.measured;
    let status = if r.passed() { "ok".to_string() } else { format!("MISMATCH in {}", r.mismatches.join(", ")) };
    format!(
        "{:<16} m={} d={} s={} t={} r={} smith={} strongly perfect: {}/{}  {status}",
        r.name, m.m, m.d, m.s, m.t, m.r, m.smith, r.strongly_perfect, r.dual_strongly_perfect
    )
}

fn lattice_cmd(j: bool, c: &LatticeCmd) -> Outcome {
    let opts = EnumOptions::default();
    match c {
        LatticeCmd::Info(arg) => {
            let l = load_lattice(arg)?;
            let parity = l.parity();
            let (min, s) = enumerate::minimum_and_kissing(&l, &opts)?;
            let (dmin, t) = enumerate::minimum_and_kissing(&l.dual(), &opts)?;
            let bm = design::bm_from_minima(min.clone(), dmin.clone(), l.dim());
            let smith = l.smith_invariant().ok().map(|d| d.to_string());
            let value = json!({
                "name": l.name(), "dim": l.dim(), "det": show(&l.det()),
                "integral": parity.integral, "even": parity.even,
                "even_level": parity.even_level, "smith": smith,
                "min": show(&min), "s": s, "dual_min": show(&dmin), "t": t,
                "r": show(&bm.r), "minimal_type": bm.minimal_type,
            });
            emit(j, value, || {
                let mut out = format!("{} (dim {}, det {})\n", l.name(), l.dim(), l.det());
                out += &format!("integral {}, even {}", parity.integral, parity.even);
                if let Some(level) = parity.even_level {
                    out += &format!(", even level {level}");
                }
                if let Some(sm) = &smith {
                    out += &format!(", smith {sm}");
                }
                out += &format!("\nmin {min}, s {s}; dual min {dmin}, t {t}; r = {}", bm.r);
                if bm.minimal_type {
                    out += " (minimal type)";
                }
                out
            });
            Ok(true)
        }
        LatticeCmd::Shells { lattice, bound, vectors } => {
            let l = load_lattice(lattice)?;
            let opts = EnumOptions { keep_vectors: *vectors, pruning: Pruning::Float, ..opts };
            let t = enumerate::short_vectors(&l, &parse_rat("bound", bound)?, &opts)?;
            let value = json!({
                "bound": show(&t.bound),
                "shells": t.shells.iter().map(|s| json!({
                    "norm": show(&s.norm), "count": s.count, "representatives": s.representatives,
                })).collect::<Vec<_>>(),
            });
            emit(j, value, || {
                let mut out = format!("{:>10}  count", "norm");
                for s in &t.shells {
                    out += &format!("\n{:>10}  {}", s.norm.to_string(), s.count);
                    for v in s.representatives.iter().flatten() {
                        out += &format!("\n            {v:?}");
                    }
                }
                out
            });
            Ok(true)
        }
        LatticeCmd::Theta { lattice, precision } => {
            let l = load_lattice(lattice)?;
            let a = enumerate::theta_coeffs(&l, *precision, &opts)?;
            emit(j, json!({"coefficients": a}), || {
                let terms: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| match i {
                        0 => c.to_string(),
                        1 => format!("{c}q"),
                        _ => format!("{c}q^{i}"),
                    })
                    .collect();
                format!("{} + O(q^{})", terms.join(" + "), precision + 1)
            });
            Ok(true)
        }
    }
}

fn design_cmd(j: bool, c: &DesignCmd) -> Outcome {
    let opts = EnumOptions::with_vectors();
    match c {
        DesignCmd::Check { lattice, alpha, beta } => {
            let l = load_lattice(lattice)?;
            let n = l.dim();
            let unit = |k: usize| (0..n).map(|i| rat::int((i == k) as i64)).collect::<Vec<_>>();
            let alpha = alpha.as_deref().map(|s| parse_vec("alpha", s)).transpose()?.unwrap_or_else(|| unit(0));
            let beta = beta.as_deref().map(|s| parse_vec("beta", s)).transpose()?.unwrap_or_else(|| unit(1 % n));
            if alpha.len() != n || beta.len() != n {
                return Err(InputError(format!("test vectors need {n} coordinates")));
            }
            let rep = Designs::new(&l, &opts)?.check(&alpha, &beta);
            let value = json!({
                "s": rep.s, "min": show(&rep.m), "n": rep.n,
                "rows": rep.rows.iter().map(|r| json!({
                    "equation": r.equation.to_string(), "computed": show(&r.computed),
                    "expected": show(&r.expected), "holds": r.holds(), "integral": r.integral,
                })).collect::<Vec<_>>(),
                "is_4_design": rep.is_4_design(),
            });
            emit(j, value, || {
                let mut out = format!("s = {}, min = {}\n", rep.s, rep.m);
                for r in &rep.rows {
                    out += &format!(
                        "{:<12} {:>14} {:>14}  {}\n",
                        r.equation.to_string(),
                        r.computed.to_string(),
                        r.expected.to_string(),
                        if r.holds() { "ok" } else { "differs" }
                    );
                }
                out.trim_end().to_string()
            });
            Ok(rep.row(Equation::D4).holds())
        }
        DesignCmd::StronglyPerfect(arg) => {
            let l = load_lattice(arg)?;
            let sp = design::is_strongly_perfect(&l, &opts)?;
            let dsp = design::is_strongly_perfect(&l.dual(), &opts)?;
            emit(j, json!({"strongly_perfect": sp, "dual_strongly_perfect": dsp}), || {
                format!("lattice: {sp}\ndual: {dsp}")
            });
            Ok(sp && dsp)
        }
    }
}

fn classify_cmd(j: bool, c: &ClassifyCmd) -> Outcome {
    match c {
        ClassifyCmd::Rs { disable } => {
            let mut filters = FilterSet::all();
            for name in disable {
                let f = RsFilter::from_name(name).ok_or_else(|| {
                    let known: Vec<_> = RsFilter::ALL.iter().map(|f| f.name()).collect();
                    InputError(format!("unknown filter {name:?}; known: {}", known.join(", ")))
                })?;
                filters = filters.without(f);
            }
            let t = classify::rs_candidates_with(filters);
            let value = json!({
                "rows": t.rows.iter().map(|r| json!({
                    "r": show(&r.r), "s_base": r.s_base, "a": r.a_values,
                })).collect::<Vec<_>>(),
                "minimal_type": show(&t.minimal_type_marker),
                "rejected": t.rejected.iter().map(|(f, n)| (f.name().to_string(), *n)).collect::<std::collections::BTreeMap<_, _>>(),
            });
            emit(j, value, || t.to_string().trim_end().to_string());
            Ok(true)
        }
        ClassifyCmd::DualPairs => {
            let t = classify::dual_pair_filter(&classify::rs_candidates().rows);
            let value = json!({
                "rows": t.rows.iter().map(|r| json!({
                    "r": show(&r.r), "s_base": r.s_base, "a": r.a_values, "cond": r.cond.to_string(),
                })).collect::<Vec<_>>(),
                "removed": t.removed.iter().map(|r| json!({
                    "r": show(&r.r), "s": r.s, "t": r.t, "value": show(&r.value),
                })).collect::<Vec<_>>(),
            });
            emit(j, value, || t.to_string().trim_end().to_string());
            Ok(true)
        }
        ClassifyCmd::MinimalType => {
            let scan = classify::minimal_type_scan();
            let value = json!({
                "pairs": scan.pairs,
                "count": scan.pairs.len(),
                "rejected": scan.rejected.iter().map(|(f, n)| (f.name().to_string(), *n)).collect::<std::collections::BTreeMap<_, _>>(),
            });
            emit(j, value, || scan.to_string());
            Ok(true)
        }
    }
}

fn load_system(file: &Path, precision: Option<usize>) -> Result<thetalp::ThetaLPSystem, InputError> {
    let sys = format::parse_theta_system(&read(file)?)?;
    Ok(match precision {
        Some(n) if n > sys.precision => {
            return Err(InputError(format!("file only has coefficients up to q^{}", sys.precision)))
        }
        Some(n) => sys.truncated(n),
        None => sys,
    })
}

fn theta_cmd(j: bool, c: &ThetaCmd) -> Outcome {
    match c {
        ThetaCmd::Solve { file, precision, out } => {
            let sys = load_system(file, *precision)?;
            let lin = thetalp::build_constraints(&sys)?;
            let outcome = thetalp::lp_solve(&lin);
            let checked = thetalp::verify_certificate(&lin, &outcome);
            let file_out = OutcomeFile::from_outcome(&outcome);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&file_out)?;
                std::fs::write(path, text + "\n").map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            let value = json!({
                "provenance": sys.provenance, "unknowns": sys.dim(), "rows": lin.rows.len(),
                "outcome": file_out, "verified": checked,
            });
            emit(j, value, || {
                let mut text = format!(
                    "level {}, weight {}, {} unknowns, {} constraints\nprovenance: {}\n",
                    sys.level,
                    sys.weight,
                    sys.dim(),
                    lin.rows.len(),
                    sys.provenance
                );
                match outcome.status {
                    LpStatus::Feasible => {
                        let c: Vec<String> = outcome.solution.iter().flatten().map(show).collect();
                        text += &format!("feasible: c = ({})", c.join(", "));
                    }
                    LpStatus::Infeasible => {
                        let cert = outcome.certificate.as_deref().unwrap_or_default();
                        let used: Vec<String> = lin
                            .rows
                            .iter()
                            .zip(cert)
                            .filter(|(_, y)| !num_traits::Zero::is_zero(*y))
                            .map(|(r, y)| format!("{} × [{}]", show(y), r.label))
                            .collect();
                        text += &format!("infeasible; Farkas combination:\n  {}", used.join("\n  "));
                    }
                }
                text += &format!("\ncertificate re-checked: {checked}");
                text
            });
            Ok(checked)
        }
        ThetaCmd::Verify { file, outcome, precision } => {
            let sys = load_system(file, *precision)?;
            let lin = thetalp::build_constraints(&sys)?;
            let parsed: OutcomeFile = serde_json::from_str(&read(outcome)?)?;
            let o = parsed.to_outcome()?;
            let ok = thetalp::verify_certificate(&lin, &o);
            emit(j, json!({"status": parsed.status, "verified": ok}), || {
                format!("{} outcome {}", parsed.status, if ok { "verified" } else { "REJECTED" })
            });
            Ok(ok)
        }
    }
}
