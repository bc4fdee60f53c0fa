//! Command-line front end: set generation, classification, condition
//! checks, witness searches, the shift-punch engine, splitters, and the
//! family lab.
//!
//! Exit codes: 0 success, 2 usage error, 3 missing input file, 4 malformed
//! input file, 5 runtime error.  Reports are line-oriented plain text with
//! an optional `--json` mirror; output is byte-identical for identical
//! inputs and flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use syndetics::classify::{
    brauer_search, dyadic_cover_check, ip_n_member, piecewise_syndetic_on_window,
    ps_shift_witness, syndetic_on_window, thick_on_window, thickly_syndetic_on_window, IntPoly,
    SearchResult, Witness, WindowVerdict,
};
use syndetics::family::law_battery;
use syndetics::filters::{
    cssd_check, cssd_upgraded_check, dct_search, ds_check, dthick_search, CssdBudget,
};
use syndetics::generate::{generate, rotation_battery, GeneratorSpec, Rational};
use syndetics::partition::{rotation_partition_pair, split_syndetic, split_thick_greedy};
use syndetics::punch::{l_set, run as punch_run, verify_trace, write_csv};
use syndetics::window::WindowSet;

#[derive(Parser)]
#[command(name = "syndetics", version, about = "Finite-horizon combinatorics of integer sets")]
struct Cli {
    /// Mirror the report as a JSON array on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a JSON generator spec to a set file.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run window-scope largeness checks against a set file.
    Classify(ClassifyArgs),
    /// Check the translate-intersection syndeticity condition.
    Cssd(CssdArgs),
    /// Witness searches (finite-sums chains, shifted intersections, …).
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Shift-punch engine.
    Punch {
        #[command(subcommand)]
        action: PunchAction,
    },
    /// Split a set into two halves preserving largeness.
    Partition(PartitionArgs),
    /// Measure the family-algebra identities on a finite ground set.
    FamilyLab {
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// `all` or a substring filter on identity names.
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Emit the twenty-set rotation battery as set files.
    Battery {
        #[arg(long)]
        horizon: u32,
        #[arg(long)]
        outdir: PathBuf,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    set: PathBuf,
    /// Check syndeticity at covering gap N.
    #[arg(long, value_name = "N")]
    syndetic: Option<u32>,
    /// Check thickness at run length L.
    #[arg(long, value_name = "L")]
    thick: Option<u32>,
    /// Check piecewise syndeticity at `N,L`.
    #[arg(long, value_name = "N,L")]
    piecewise: Option<String>,
    /// Check thick syndeticity at `K,N`.
    #[arg(long, value_name = "K,N")]
    thickly_syndetic: Option<String>,
    /// Check the dyadic cover at block size 2^K.
    #[arg(long, value_name = "K")]
    dyadic: Option<u32>,
    /// Print the gap profile.
    #[arg(long)]
    gaps: bool,
}

#[derive(Args)]
struct CssdArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long, default_value_t = 2)]
    fmax: u32,
    #[arg(long, default_value_t = 64)]
    fbound: u32,
    #[arg(long, default_value_t = 64)]
    gap: u32,
    /// Additionally intersect with the positive multiples of M.
    #[arg(long, value_name = "M")]
    multiples: Option<u32>,
    /// Drop the leading intersection with the set itself, checking the
    /// condition for a subset of the given host set file.
    #[arg(long, value_name = "HOST")]
    within: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchKind {
    /// Find n generators whose nonempty subset sums all lie in the set.
    Ip {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        bound: u32,
    },
    /// Find x, y with x, y, x+p(y) … in the set for each polynomial.
    Brauer {
        #[arg(long)]
        set: PathBuf,
        /// Ascending coefficients with zero constant term, e.g. `0,1`.
        #[arg(long, value_name = "COEFFS", required = true)]
        poly: Vec<String>,
    },
    /// Find a shift n with A ∩ (A−n) still piecewise syndetic.
    PsShift {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
    },
    /// Find F in the complement with B−F thick.
    Dthick {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = 4)]
        fmax: u32,
        #[arg(long, default_value_t = 64)]
        fbound: u32,
        #[arg(long)]
        l: u32,
    },
    /// Find F in the complement with B ∪ (B−F) thick.
    Dct {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = 4)]
        fmax: u32,
        #[arg(long, default_value_t = 64)]
        fbound: u32,
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand)]
enum PunchAction {
    /// Run the engine and export the trace as CSV.
    Run {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        trace: PathBuf,
        /// Also write the derived set to a set file.
        #[arg(long)]
        derived: Option<PathBuf>,
        /// Also write L(ELL) to the set file given by --lset.
        #[arg(long, value_name = "ELL")]
        ell: Option<u32>,
        #[arg(long, value_name = "LSET", requires = "ell")]
        lset: Option<PathBuf>,
    },
    /// Re-run and cross-check a run at sampled steps.
    Verify {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        steps: u32,
        #[arg(long, default_value_t = 32)]
        samples: u32,
    },
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long, value_parser = ["syndetic", "thick", "rotation"])]
    mode: String,
    #[arg(long)]
    set: Option<PathBuf>,
    #[arg(long)]
    out1: PathBuf,
    #[arg(long)]
    out2: PathBuf,
    /// Run length to preserve (thick mode).
    #[arg(long)]
    lmax: Option<u32>,
    /// Rotation surrogate `p/q` (rotation mode).
    #[arg(long)]
    alpha: Option<String>,
    /// Horizon (rotation mode).
    #[arg(long)]
    horizon: Option<u32>,
}

enum CliError {
    Usage(String),
    MissingFile(PathBuf),
    Malformed(PathBuf, String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::MissingFile(_) => 3,
            CliError::Malformed(..) => 4,
            CliError::Runtime(_) => 5,
        }
    }
}

fn runtime(err: impl std::fmt::Display) -> CliError {
    CliError::Runtime(err.to_string())
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::MissingFile(path.to_path_buf()),
        _ => CliError::Runtime(format!("{}: {e}", path.display())),
    })
}

fn read_set(path: &Path) -> Result<WindowSet, CliError> {
    let text = read_text(path)?;
    WindowSet::from_str(&text).map_err(|e| CliError::Malformed(path.to_path_buf(), e.to_string()))
}

fn write_set(path: &Path, set: &WindowSet) -> Result<(), CliError> {
    std::fs::write(path, format!("{set}\n")).map_err(runtime)
}

fn parse_pair(s: &str, flag: &str) -> Result<(u32, u32), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 2 {
        if let (Ok(a), Ok(b)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
            return Ok((a, b));
        }
    }
    Err(CliError::Usage(format!("--{flag} wants two integers `a,b`")))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| CliError::Usage("--alpha wants `p/q`".into()))?;
    let p: i128 = p
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("bad numerator".into()))?;
    let q: i128 = q
        .trim()
        .parse()
        .map_err(|_| CliError::Usage("bad denominator".into()))?;
    if q <= 0 {
        return Err(CliError::Usage("denominator must be positive".into()));
    }
    Ok(Rational::new(p, q))
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::EmptyInterval { start, len } => {
            format!("empty-interval [{start},{})", start + len)
        }
        Witness::Run { start, len } => format!("run [{start},{})", start + len),
        Witness::Elements(els) => format!("elements {els:?}"),
        Witness::FamilyGap { family, start, len } => {
            format!("F={family:?} empty-interval [{start},{})", start + len)
        }
    }
}

fn describe_verdict(v: &WindowVerdict) -> String {
    match v {
        WindowVerdict::HoldsOnWindow { witness } => match witness {
            Some(w) => format!("HoldsOnWindow {}", describe_witness(w)),
            None => "HoldsOnWindow".into(),
        },
        WindowVerdict::FailsOnWindow { witness } => {
            format!("FailsOnWindow {}", describe_witness(witness))
        }
    }
}

fn verdict_json(check: &str, v: &WindowVerdict) -> serde_json::Value {
    json!({
        "check": check,
        "holds": v.holds(),
        "witness": v.witness().map(describe_witness),
    })
}

struct Report {
    lines: Vec<String>,
    values: Vec<serde_json::Value>,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: vec![],
            values: vec![],
        }
    }

    fn push(&mut self, line: String, value: serde_json::Value) {
        self.lines.push(line);
        self.values.push(value);
    }

    fn print(self, as_json: bool) {
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(self.values)).unwrap()
            );
        } else {
            for line in self.lines {
                println!("{line}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command, cli.json) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) => format!("usage error: {m}"),
                CliError::MissingFile(p) => format!("missing file: {}", p.display()),
                CliError::Malformed(p, m) => format!("malformed file {}: {m}", p.display()),
                CliError::Runtime(m) => format!("error: {m}"),
            };
            eprintln!("{msg}");
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command, as_json: bool) -> Result<(), CliError> {
    match command {
        Command::Generate { spec, out } => cmd_generate(&spec, &out, as_json),
        Command::Classify(args) => cmd_classify(args, as_json),
        Command::Cssd(args) => cmd_cssd(args, as_json),
        Command::Search { kind } => cmd_search(kind, as_json),
        Command::Punch { action } => cmd_punch(action, as_json),
        Command::Partition(args) => cmd_partition(args, as_json),
        Command::FamilyLab { n, check } => cmd_family_lab(n, &check, as_json),
        Command::Battery { horizon, outdir } => cmd_battery(horizon, &outdir, as_json),
    }
}

fn cmd_generate(spec_path: &Path, out: &Path, as_json: bool) -> Result<(), CliError> {
    let text = read_text(spec_path)?;
    let spec: GeneratorSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(spec_path.to_path_buf(), e.to_string()))?;
    let set = generate(&spec).map_err(runtime)?;
    write_set(out, &set)?;
    let mut report = Report::new();
    report.push(
        format!(
            "generated {} members on E={} -> {}",
            set.count(),
            set.effective_horizon(),
            out.display()
        ),
        json!({
            "members": set.count(),
            "effective_horizon": set.effective_horizon(),
            "out": out.display().to_string(),
        }),
    );
    report.print(as_json);
    Ok(())
}

fn cmd_classify(args: ClassifyArgs, as_json: bool) -> Result<(), CliError> {
    let piecewise = args
        .piecewise
        .as_deref()
        .map(|s| parse_pair(s, "piecewise"))
        .transpose()?;
    let thickly = args
        .thickly_syndetic
        .as_deref()
        .map(|s| parse_pair(s, "thickly-syndetic"))
        .transpose()?;
    let any = args.syndetic.is_some()
        || args.thick.is_some()
        || piecewise.is_some()
        || thickly.is_some()
        || args.dyadic.is_some()
        || args.gaps;
    if !any {
        return Err(CliError::Usage(
            "classify wants at least one of --syndetic/--thick/--piecewise/--thickly-syndetic/--dyadic/--gaps"
                .into(),
        ));
    }
    let set = read_set(&args.set)?;
    let mut report = Report::new();
    if args.gaps {
        let p = set.gap_profile();
        report.push(
            format!(
                "gaps: covering_gap={} longest_run={} head={} tail_slack={}",
                opt(p.covering_gap),
                p.longest_run,
                opt(p.head),
                opt(p.tail_slack)
            ),
            json!({
                "check": "gaps",
                "covering_gap": p.covering_gap,
                "longest_run": p.longest_run,
                "head": p.head,
                "tail_slack": p.tail_slack,
            }),
        );
    }
    if let Some(n) = args.syndetic {
        let v = syndetic_on_window(&set, n).map_err(runtime)?;
        report.push(
            format!("syndetic N={n}: {}", describe_verdict(&v)),
            verdict_json("syndetic", &v),
        );
    }
    if let Some(l) = args.thick {
        let v = thick_on_window(&set, l).map_err(runtime)?;
        report.push(
            format!("thick L={l}: {}", describe_verdict(&v)),
            verdict_json("thick", &v),
        );
    }
    if let Some((n, l)) = piecewise {
        let v = piecewise_syndetic_on_window(&set, n, l).map_err(runtime)?;
        report.push(
            format!("piecewise-syndetic N={n} L={l}: {}", describe_verdict(&v)),
            verdict_json("piecewise-syndetic", &v),
        );
    }
    if let Some((k, n)) = thickly {
        let v = thickly_syndetic_on_window(&set, k, n).map_err(runtime)?;
        report.push(
            format!("thickly-syndetic K={k} N={n}: {}", describe_verdict(&v)),
            verdict_json("thickly-syndetic", &v),
        );
    }
    if let Some(k) = args.dyadic {
        let v = dyadic_cover_check(&set, k).map_err(runtime)?;
        report.push(
            format!("dyadic-cover K={k}: {}", describe_verdict(&v)),
            verdict_json("dyadic-cover", &v),
        );
    }
    report.print(as_json);
    Ok(())
}

fn opt(v: Option<u32>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn cmd_cssd(args: CssdArgs, as_json: bool) -> Result<(), CliError> {
    if args.multiples.is_some() && args.within.is_some() {
        return Err(CliError::Usage(
            "--multiples and --within are mutually exclusive".into(),
        ));
    }
    let set = read_set(&args.set)?;
    let budget = CssdBudget::new(args.fmax, args.fbound, args.gap);
    let (check, v) = if let Some(m) = args.multiples {
        (
            format!("cssd-multiples m={m}"),
            cssd_upgraded_check(&set, budget, m).map_err(runtime)?,
        )
    } else if let Some(host) = &args.within {
        let host_set = read_set(host)?;
        (
            "ds".to_string(),
            ds_check(&host_set, &set, budget).map_err(runtime)?,
        )
    } else {
        (
            "cssd".to_string(),
            cssd_check(&set, budget).map_err(runtime)?,
        )
    };
    let mut report = Report::new();
    report.push(
        format!(
            "{check} fmax={} fbound={} gap={}: {}",
            budget.f_max,
            budget.f_bound,
            budget.gap_bound,
            describe_verdict(&v)
        ),
        verdict_json(&check, &v),
    );
    report.print(as_json);
    Ok(())
}

fn describe_search<T: std::fmt::Debug>(r: &SearchResult<T>) -> String {
    match r {
        SearchResult::Found(t) => format!("Found {t:?}"),
        SearchResult::NotFoundWithinBudget => "NotFoundWithinBudget".into(),
    }
}

fn search_json<T: std::fmt::Debug>(check: &str, r: &SearchResult<T>) -> serde_json::Value {
    json!({
        "check": check,
        "found": r.is_found(),
        "witness": r.found().map(|t| format!("{t:?}")),
    })
}

fn cmd_search(kind: SearchKind, as_json: bool) -> Result<(), CliError> {
    let mut report = Report::new();
    match kind {
        SearchKind::Ip { set, n, bound } => {
            let a = read_set(&set)?;
            let r = ip_n_member(&a, n, bound);
            report.push(
                format!("ip n={n} bound={bound}: {}", describe_search(&r)),
                search_json("ip", &r),
            );
        }
        SearchKind::Brauer { set, poly } => {
            let a = read_set(&set)?;
            let mut polys = Vec::new();
            for p in &poly {
                let coeffs: Result<Vec<i64>, _> =
                    p.split(',').map(|c| c.trim().parse::<i64>()).collect();
                let coeffs =
                    coeffs.map_err(|_| CliError::Usage(format!("bad polynomial `{p}`")))?;
                polys.push(IntPoly::new(coeffs).map_err(|e| CliError::Usage(e.to_string()))?);
            }
            let r = brauer_search(&a, &polys);
            report.push(
                format!("brauer: {}", describe_search(&r)),
                search_json("brauer", &r),
            );
        }
        SearchKind::PsShift { set, n, l } => {
            let a = read_set(&set)?;
            let r = ps_shift_witness(&a, n, l).map_err(runtime)?;
            report.push(
                format!("ps-shift N={n} L={l}: {}", describe_search(&r)),
                search_json("ps-shift", &r),
            );
        }
        SearchKind::Dthick {
            set,
            fmax,
            fbound,
            l,
        } => {
            let a = read_set(&set)?;
            let r = dthick_search(&a, fmax, fbound, l).map_err(runtime)?;
            report.push(
                format!(
                    "dthick fmax={fmax} fbound={fbound} L={l}: {}",
                    describe_search(&r)
                ),
                search_json("dthick", &r),
            );
        }
        SearchKind::Dct {
            set,
            fmax,
            fbound,
            l,
        } => {
            let a = read_set(&set)?;
            let r = dct_search(&a, fmax, fbound, l);
            report.push(
                format!(
                    "dct fmax={fmax} fbound={fbound} L={l}: {}",
                    describe_search(&r)
                ),
                search_json("dct", &r),
            );
        }
    }
    report.print(as_json);
    Ok(())
}

fn cmd_punch(action: PunchAction, as_json: bool) -> Result<(), CliError> {
    let mut report = Report::new();
    match action {
        PunchAction::Run {
            set,
            steps,
            trace,
            derived,
            ell,
            lset,
        } => {
            let a = read_set(&set)?;
            let t = punch_run(&a, steps).map_err(runtime)?;
            let mut csv = Vec::new();
            write_csv(&t, &mut csv).map_err(runtime)?;
            std::fs::write(&trace, csv).map_err(runtime)?;
            if let Some(path) = derived {
                write_set(&path, &t.derived_b)?;
            }
            if let (Some(ell), Some(path)) = (ell, lset) {
                write_set(&path, &l_set(&t, ell))?;
            }
            report.push(
                format!(
                    "punched {steps} steps (exactness bound {}), derived |B|={} -> {}",
                    t.exactness_bound,
                    t.derived_b.count(),
                    trace.display()
                ),
                json!({
                    "steps": steps,
                    "exactness_bound": t.exactness_bound,
                    "derived_members": t.derived_b.count(),
                    "trace": trace.display().to_string(),
                }),
            );
        }
        PunchAction::Verify {
            set,
            steps,
            samples,
        } => {
            let a = read_set(&set)?;
            let t = punch_run(&a, steps).map_err(runtime)?;
            // evenly spread samples across the run
            let picked: Vec<u32> = (1..=samples)
                .map(|i| (i as u64 * steps as u64 / samples.max(1) as u64).max(1) as u32)
                .collect();
            let r = verify_trace(&t, &picked);
            report.push(
                format!(
                    "verify steps={steps} samples={}: {} checks, {}",
                    picked.len(),
                    r.checks,
                    if r.passed() {
                        "all passed".to_string()
                    } else {
                        format!("{} FAILED: {:?}", r.failures.len(), r.failures)
                    }
                ),
                json!({
                    "steps": steps,
                    "checks": r.checks,
                    "failures": r.failures.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
                }),
            );
            if !r.passed() {
                report.print(as_json);
                return Err(CliError::Runtime("trace verification failed".into()));
            }
        }
    }
    report.print(as_json);
    Ok(())
}

fn cmd_partition(args: PartitionArgs, as_json: bool) -> Result<(), CliError> {
    let (first, second, label) = match args.mode.as_str() {
        "syndetic" => {
            let set_path = args
                .set
                .ok_or_else(|| CliError::Usage("--set is required for mode=syndetic".into()))?;
            let a = read_set(&set_path)?;
            let (x, y) = split_syndetic(&a).map_err(runtime)?;
            (x, y, "syndetic".to_string())
        }
        "thick" => {
            let set_path = args
                .set
                .ok_or_else(|| CliError::Usage("--set is required for mode=thick".into()))?;
            let lmax = args
                .lmax
                .ok_or_else(|| CliError::Usage("--lmax is required for mode=thick".into()))?;
            let a = read_set(&set_path)?;
            let (x, y) = split_thick_greedy(&a, lmax).map_err(runtime)?;
            (x, y, format!("thick lmax={lmax}"))
        }
        "rotation" => {
            let alpha = args
                .alpha
                .as_deref()
                .ok_or_else(|| CliError::Usage("--alpha is required for mode=rotation".into()))?;
            let horizon = args
                .horizon
                .ok_or_else(|| CliError::Usage("--horizon is required for mode=rotation".into()))?;
            let alpha = parse_rational(alpha)?;
            let (x, y) = rotation_partition_pair(&alpha, horizon).map_err(runtime)?;
            (x, y, format!("rotation horizon={horizon}"))
        }
        other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
    };
    write_set(&args.out1, &first)?;
    write_set(&args.out2, &second)?;
    let mut report = Report::new();
    report.push(
        format!(
            "partition {label}: |A1|={} |A2|={}",
            first.count(),
            second.count()
        ),
        json!({
            "mode": label,
            "first_members": first.count(),
            "second_members": second.count(),
        }),
    );
    report.print(as_json);
    Ok(())
}

fn cmd_family_lab(n: u32, check: &str, as_json: bool) -> Result<(), CliError> {
    if n == 0 || n > 4 {
        return Err(CliError::Usage(
            "the exhaustive lab runs on ground sizes 1..=4".into(),
        ));
    }
    let reports = law_battery(n);
    let mut report = Report::new();
    report.push(
        format!("family-lab ground={n} identities={}", reports.len()),
        json!({"ground": n, "identities": reports.len()}),
    );
    for law in &reports {
        if check != "all" && !law.law.contains(check) {
            continue;
        }
        let mut line = format!(
            "[{}] {} ({} cases",
            if law.holds() { "holds" } else { "fails" },
            law.law,
            law.cases
        );
        if law.holds() {
            line.push(')');
        } else {
            let _ = write!(
                line,
                ", {} failures; first: {})",
                law.failures,
                law.first_counterexample.as_deref().unwrap_or("-")
            );
        }
        report.push(
            line,
            json!({
                "law": law.law,
                "cases": law.cases,
                "failures": law.failures,
                "first_counterexample": law.first_counterexample,
            }),
        );
    }
    report.print(as_json);
    Ok(())
}

fn cmd_battery(horizon: u32, outdir: &Path, as_json: bool) -> Result<(), CliError> {
    std::fs::create_dir_all(outdir).map_err(runtime)?;
    let battery = rotation_battery(horizon).map_err(runtime)?;
    let mut report = Report::new();
    for (name, set) in &battery {
        let path = outdir.join(format!("{name}.txt"));
        write_set(&path, set)?;
        report.push(
            format!("{name}: |A|={} -> {}", set.count(), path.display()),
            json!({"name": name, "members": set.count(), "path": path.display().to_string()}),
        );
    }
    report.print(as_json);
    Ok(())
}
