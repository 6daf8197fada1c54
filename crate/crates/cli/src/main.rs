//! Batch front end: build a requested instance, run the full verification
//! suite, and emit a structured report.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wmha_core::constructions::{
    cb_wmha, check_cb_structure, check_smash_structure, dqg_wmha, function_wmha, gamma_map,
    groupoid_algebra_wmha, smash_wmha,
};
use wmha_core::groupoid::{
    action_groupoid, disjoint_union, group_groupoid, pair_groupoid, FiniteGroup, FiniteGroupoid,
    GroupAction,
};
use wmha_core::hopf::{function_left_action, function_right_action, group_hopf, HopfAlgebra, LeftAction, RightAction};
use wmha_core::report::{CheckResult, Report};
use wmha_core::separability::{diagonal_on_set, SeparabilityIdempotent};
use wmha_core::wmha::{verify_all, Verifier, WmhaBundle};
use wmha_core::Rat;

#[derive(Parser)]
#[command(name = "wmha", version, about = "Construct and verify weak multiplier Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an instance and run every applicable check on it.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Shape of the underlying combinatorial input.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Point count for `pair` and `sep-diagonal`.
    #[arg(long)]
    size: Option<usize>,
    /// Point count of the acted-on set for `action` and `smash`.
    #[arg(long)]
    set: Option<usize>,
    /// Cyclic group name such as Z2; repeat the flag for `disjoint-union`.
    #[arg(long)]
    group: Vec<String>,
    /// Two 1-based points swapped by the group generator.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    swap: Option<Vec<usize>>,
    /// Groupoid description as JSON for `groupoid-file`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Which bundle to build over the input.
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    /// Write the full JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// List the checks this invocation would run, without judging them.
    #[arg(long)]
    list_checks: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Kind {
    GroupoidFile,
    Pair,
    Action,
    Group,
    DisjointUnion,
    Dqg,
    SepDiagonal,
    Smash,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Construction {
    Functions,
    Convolution,
    Cb,
    Smash,
}

/// Construction-specific follow-up checks to run after the generic suite.
enum Extra {
    None,
    Cb(SeparabilityIdempotent<Rat>),
    Smash {
        sep: SeparabilityIdempotent<Rat>,
        q: HopfAlgebra<Rat>,
        act_r: RightAction<Rat>,
        act_l: LeftAction<Rat>,
    },
}

struct Instance {
    name: String,
    bundle: WmhaBundle<Rat>,
    extra: Extra,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify(args) => run_verify(args),
    }
}

fn run_verify(args: VerifyArgs) -> ExitCode {
    let inst = match build_instance(&args) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let mut checks = verify_all(&inst.bundle);
    match &inst.extra {
        Extra::None => {}
        Extra::Cb(sep) => {
            let v = Verifier::new(&inst.bundle);
            checks.extend(check_cb_structure(&v, sep));
        }
        Extra::Smash { sep, q, act_r, act_l } => {
            let v = Verifier::new(&inst.bundle);
            checks.extend(check_smash_structure(&v, sep, q, act_r, act_l));
        }
    }
    match gamma_map(&inst.bundle) {
        Ok(rep) => checks.extend(rep.checks),
        Err(e) => checks.push(CheckResult::fail(
            "gamma-build",
            "the multiplication map of the leg algebras is constructible",
            e,
        )),
    }

    if args.list_checks {
        for c in &checks {
            println!("{}  {}", c.name, c.statement);
        }
        return ExitCode::SUCCESS;
    }

    let report = Report::new(&inst.name, inst.bundle.dim(), checks);
    let (pass, fail, skip) = report.counts();
    println!("instance: {}", report.instance);
    println!("dimension: {}", report.dimension);
    println!("checks: {pass} passed, {fail} failed, {skip} skipped");
    for c in report.checks.iter().filter(|c| !c.passed()) {
        println!("  {c}");
    }

    if let Some(path) = &args.report {
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_group(name: &str) -> Result<FiniteGroup, String> {
    let rest = name
        .strip_prefix('Z')
        .or_else(|| name.strip_prefix('z'))
        .or_else(|| name.strip_prefix('C'))
        .or_else(|| name.strip_prefix('c'))
        .ok_or_else(|| format!("unsupported group {name}, expected Z<n>"))?;
    let n: usize = rest.parse().map_err(|_| format!("unsupported group {name}, expected Z<n>"))?;
    if n == 0 {
        return Err("group order must be positive".to_string());
    }
    Ok(FiniteGroup::cyclic(n))
}

fn groupoid_bundle(
    g: &FiniteGroupoid,
    construction: Option<Construction>,
) -> Result<(String, WmhaBundle<Rat>), String> {
    match construction {
        Some(Construction::Functions) | None => Ok(("functions".to_string(), function_wmha(g))),
        Some(Construction::Convolution) => Ok(("convolution".to_string(), groupoid_algebra_wmha(g))),
        _ => Err("this kind supports --construction functions or convolution".to_string()),
    }
}

fn swap_action(args: &VerifyArgs, nx: usize) -> Result<GroupAction, String> {
    match &args.swap {
        None => Ok(GroupAction::trivial(2, nx)),
        Some(v) => {
            let (a, b) = (v[0], v[1]);
            if a == 0 || b == 0 || a > nx || b > nx {
                return Err(format!("--swap points must lie in 1..={nx}"));
            }
            Ok(GroupAction::swap(nx, a - 1, b - 1))
        }
    }
}

fn build_instance(args: &VerifyArgs) -> Result<Instance, String> {
    let kind = args.kind.unwrap_or(Kind::Pair);
    match kind {
        Kind::Pair => {
            let n = args.size.ok_or("--kind pair needs --size")?;
            if n == 0 || n > 8 {
                return Err("--size must lie in 1..=8".to_string());
            }
            let g = pair_groupoid(n);
            let (c, bundle) = groupoid_bundle(&g, args.construction)?;
            Ok(Instance { name: format!("pair({n}) {c}"), bundle, extra: Extra::None })
        }
        Kind::Group => {
            let name = args.group.first().ok_or("--kind group needs --group")?;
            let h = parse_group(name)?;
            let g = group_groupoid(&h);
            let (c, bundle) = groupoid_bundle(&g, args.construction)?;
            Ok(Instance { name: format!("group({name}) {c}"), bundle, extra: Extra::None })
        }
        Kind::DisjointUnion => {
            if args.group.len() < 2 {
                return Err("--kind disjoint-union needs at least two --group flags".to_string());
            }
            let mut parts = args.group.iter();
            let first = parse_group(parts.next().unwrap())?;
            let mut g = group_groupoid(&first);
            for name in parts {
                g = disjoint_union(&g, &group_groupoid(&parse_group(name)?));
            }
            let (c, bundle) = groupoid_bundle(&g, args.construction)?;
            Ok(Instance {
                name: format!("disjoint-union({}) {c}", args.group.join(",")),
                bundle,
                extra: Extra::None,
            })
        }
        Kind::Action => {
            let nx = args.set.ok_or("--kind action needs --set")?;
            let name = args.group.first().ok_or("--kind action needs --group")?;
            let h = parse_group(name)?;
            if h.len() != 2 && args.swap.is_some() {
                return Err("--swap describes an order-2 generator; use --group Z2".to_string());
            }
            let action = swap_action(args, nx)?;
            match args.construction {
                Some(Construction::Smash) => smash_instance(args, nx, &h, &action),
                c => {
                    let labels: Vec<String> = (1..=nx).map(|i| i.to_string()).collect();
                    let g = action_groupoid(&labels, &h, &action);
                    let (cname, bundle) = groupoid_bundle(&g, c)?;
                    Ok(Instance {
                        name: format!("action(set {nx}, {name}) {cname}"),
                        bundle,
                        extra: Extra::None,
                    })
                }
            }
        }
        Kind::Smash => {
            let nx = args.set.ok_or("--kind smash needs --set")?;
            let name = args.group.first().ok_or("--kind smash needs --group")?;
            let h = parse_group(name)?;
            let action = swap_action(args, nx)?;
            smash_instance(args, nx, &h, &action)
        }
        Kind::Dqg => {
            let name = args.group.first().ok_or("--kind dqg needs --group")?;
            let h = parse_group(name)?;
            if !matches!(args.construction, Some(Construction::Cb) | None) {
                return Err("--kind dqg supports only --construction cb".to_string());
            }
            let bundle = dqg_wmha(&h)?;
            let sep = wmha_core::separability::from_dqg::<Rat>(&h);
            Ok(Instance { name: format!("dqg({name}) cb"), bundle, extra: Extra::Cb(sep) })
        }
        Kind::SepDiagonal => {
            let n = args.size.ok_or("--kind sep-diagonal needs --size")?;
            if n == 0 || n > 16 {
                return Err("--size must lie in 1..=16".to_string());
            }
            if !matches!(args.construction, Some(Construction::Cb) | None) {
                return Err("--kind sep-diagonal supports only --construction cb".to_string());
            }
            let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let sep = diagonal_on_set::<Rat>(&labels);
            let bundle = cb_wmha(&sep)?;
            Ok(Instance { name: format!("sep-diagonal({n}) cb"), bundle, extra: Extra::Cb(sep) })
        }
        Kind::GroupoidFile => {
            let path = args.input.as_ref().ok_or("--kind groupoid-file needs --input")?;
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))?;
            let g = FiniteGroupoid::from_json(&value)?;
            let violations = g.validate();
            if !violations.is_empty() {
                return Err(format!("not a groupoid: {}", violations[0]));
            }
            let (c, bundle) = groupoid_bundle(&g, args.construction)?;
            Ok(Instance {
                name: format!("groupoid-file({}) {c}", path.display()),
                bundle,
                extra: Extra::None,
            })
        }
    }
}

fn smash_instance(
    args: &VerifyArgs,
    nx: usize,
    h: &FiniteGroup,
    action: &GroupAction,
) -> Result<Instance, String> {
    let labels: Vec<String> = (1..=nx).map(|i| i.to_string()).collect();
    let sep = diagonal_on_set::<Rat>(&labels);
    let q = group_hopf::<Rat>(h);
    let act_r = function_right_action(h, action);
    let act_l = function_left_action(h, action);
    let bundle = smash_wmha(&sep, &q, &act_r, &act_l)?;
    let swap_note = match &args.swap {
        Some(v) => format!(" swap {} {}", v[0], v[1]),
        None => String::new(),
    };
    Ok(Instance {
        name: format!("smash(set {nx}, Z{}{swap_note})", h.len()),
        bundle,
        extra: Extra::Smash { sep, q, act_r, act_l },
    })
}
