use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::json;

use super::format::{
    is_probability, parse_biguint, parse_rational, parse_rational_list, parse_subset, show_set,
    write_set_system, FileFormat,
};
use super::report::{CommandOutput, Status};
use super::verify::{run_suite, Suite};
use super::{Command, Context};
use crate::bounds::{
    ell_zero, er_bound, lambda_d, log_star_smoothed, log_star_smoothed_pow2, vc1_threshold,
};
use crate::error::{Error, Result};
use crate::gen::{corpus, random_family, tree_family, GeneratorConfig, GeneratorKind};
use crate::spread::{
    count_bound, count_bound_vc1, decompose, expectation_large_weight_limited, vc1_count_hypothesis,
    ChooserRule,
};
use crate::sunflower::{
    disjoint_via_partition, extract_er, extract_vc1, find_sunflower_exact, witness_or_sunflower,
    Sunflower, WitnessOutcome,
};
use crate::threshold::{kk_dichotomy_with, DichotomyReport, DichotomyVariant};
use crate::vc::{sauer_shelah_bound, vc_dimension_limited};
use crate::{Rational, SetSystem};

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Set-system file, or `-` for stdin.
    #[arg(long, short = 'i', default_value = "-")]
    pub input: String,
    /// Input format; guessed from the content when omitted.
    #[arg(long, value_enum)]
    pub input_format: Option<FileFormat>,
}

#[derive(Args, Debug)]
pub struct VcArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Ground-size cap for the exact search (default from the environment or 24).
    #[arg(long)]
    pub max_ground: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum SunflowerCmd {
    /// Exact search for an r-sunflower.
    Find(RArgs),
    /// Greedy Erdős–Rado extraction.
    Er(RArgs),
    /// Sharp extraction for VC-dimension at most one above (r-1)^ell members.
    Vc1(RArgs),
    /// A sunflower or a structural witness pair x, y.
    Witness(RArgs),
    /// r pairwise disjoint members via random 2r-partitions of the ground set.
    Partition(PartitionArgs),
    /// CSV of thresholds and search outcomes for a range of r.
    ThresholdSweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct RArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub r: usize,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 2)]
    pub r_min: usize,
    #[arg(long, default_value_t = 6)]
    pub r_max: usize,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Leaf-to-root edge paths of the complete (r-1)-ary tree of depth ell.
    Tree {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Chooser {
    Lex,
    Random,
}

#[derive(Args, Debug)]
pub struct ChooserArgs {
    #[arg(long, value_enum, default_value_t = Chooser::Lex)]
    pub chooser: Chooser,
    /// Seed for the random chooser.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ChooserArgs {
    fn rule(&self) -> ChooserRule {
        match self.chooser {
            Chooser::Lex => ChooserRule::Lexicographic,
            Chooser::Random => ChooserRule::SeededRandom(self.seed),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum SpreadCmd {
    /// F(S), F*(S) and the small/large split for one W and t.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// Labels of W, comma or space separated.
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        chooser: ChooserArgs,
    },
    /// Exact expected large-family weight for W ~ X_p against the counting bounds.
    Expectation {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = rational_arg)]
        p: Rational,
        #[arg(long, value_parser = rational_arg)]
        q: Rational,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        chooser: ChooserArgs,
    },
}

#[derive(Args, Debug)]
pub struct KkArgs {
    #[arg(long, value_parser = variant_arg, default_value = "kk-bell")]
    pub variant: DichotomyVariant,
    /// The constant in front of the formula for p; required for vc and vc1.
    #[arg(long, value_parser = rational_arg)]
    pub constant: Option<Rational>,
}

#[derive(Subcommand, Debug)]
pub enum KkCmd {
    /// Evaluates both branches for one q and epsilon.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        kk: KkArgs,
        #[arg(long, value_parser = rational_arg)]
        q: Rational,
        #[arg(long, value_parser = rational_arg)]
        epsilon: Rational,
    },
    /// CSV over grids of q and epsilon.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        kk: KkArgs,
        /// Comma-separated values of q.
        #[arg(long, default_value = "1/2,1/4,1/8,1/16,1/32,1/64")]
        q_grid: String,
        /// Comma-separated values of epsilon.
        #[arg(long, default_value = "1/2,1/4,1/8")]
        epsilon_grid: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Smoothed iterated logarithm of x, or of 2^pow2.
    Logstar {
        #[arg(long, required_unless_present = "pow2", conflicts_with = "pow2")]
        x: Option<String>,
        #[arg(long)]
        pow2: Option<String>,
    },
    /// lambda_d(ell).
    Lambda {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        ell: u64,
    },
    /// (r-1)^ell * ell!.
    ErBound {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        ell: u64,
    },
    /// (r-1)^ell.
    Vc1Threshold {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        ell: u64,
    },
    /// 300 (d/epsilon)^3.
    EllZero {
        #[arg(long)]
        d: u64,
        #[arg(long, value_parser = rational_arg)]
        epsilon: Rational,
    },
    /// Sum of C(n, i) for i <= d.
    SauerShelah {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_parser = kind_arg, default_value = "uniform-random")]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    /// Number of members.
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of families; instance i uses seed ^ i.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Directory for the files when count > 1.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per property.
    #[arg(long, default_value_t = 40)]
    pub instances: usize,
}

fn rational_arg(raw: &str) -> std::result::Result<Rational, String> {
    parse_rational(raw).map_err(|e| e.to_string())
}

fn variant_arg(raw: &str) -> std::result::Result<DichotomyVariant, String> {
    raw.parse().map_err(|e: Error| e.to_string())
}

fn kind_arg(raw: &str) -> std::result::Result<GeneratorKind, String> {
    match raw {
        "uniform-random" => Ok(GeneratorKind::UniformRandom),
        "forest-path" => Ok(GeneratorKind::ForestPath),
        "rejection-vc1" => Ok(GeneratorKind::RejectionVc1),
        other => Err(format!(
            "unknown kind `{other}` (expected uniform-random, forest-path or rejection-vc1)"
        )),
    }
}

pub(super) fn dispatch(command: &Command, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    match command {
        Command::Vc(args) => vc(args, ctx),
        Command::Sunflower(cmd) => sunflower(cmd, ctx),
        Command::Construct(ConstructCmd::Tree { r, ell }) => {
            Ok(CommandOutput::raw(write_set_system(&tree_family(*r, *ell)?, ctx.format)?))
        }
        Command::Spread(cmd) => spread(cmd, ctx),
        Command::Kk(cmd) => kk(cmd, ctx),
        Command::Bounds(cmd) => bounds(cmd),
        Command::Gen(args) => gen(args, ctx),
        Command::Verify(args) => {
            let checks = run_suite(args.suite, args.seed, args.instances);
            let ok = checks.iter().all(|c| c.passed);
            let mut out = CommandOutput::new(Status::from_bool(ok), if ok { "holds" } else { "violated" })
                .seed(args.seed)
                .result(&checks);
            for c in &checks {
                out = out.line(format!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            Ok(out)
        }
    }
}

fn labels(h: &SetSystem, set: &crate::ElementSubset) -> Vec<String> {
    h.labels_of(set).into_iter().map(str::to_string).collect()
}

fn vc(args: &VcArgs, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    let h = ctx.load(&args.input)?;
    let cap = args.max_ground.unwrap_or(ctx.limits.vc_max_ground);
    let report = vc_dimension_limited(&h, cap)?;
    Ok(CommandOutput::new(Status::Success, "ok")
        .line(format!("dimension: {}", report.dimension))
        .line(format!("witness: {}", show_set(&h, &report.witness)))
        .result(json!({
            "dimension": report.dimension,
            "witness": labels(&h, &report.witness),
        })))
}

fn sunflower_output(h: &SetSystem, found: Option<Sunflower>) -> CommandOutput {
    match found {
        None => CommandOutput::new(Status::Negative, "absent")
            .line("outcome: absent")
            .result(json!({ "sunflower": null })),
        Some(s) => {
            let mut out = CommandOutput::new(Status::Success, "present")
                .line("outcome: present")
                .line(format!("kernel: {}", show_set(h, &s.kernel)))
                .line("members:");
            for &i in &s.members {
                out = out.line(format!("  {}", show_set(h, h.member(i))));
            }
            let sets: Vec<Vec<String>> = s.members.iter().map(|&i| labels(h, h.member(i))).collect();
            out.result(json!({
                "sunflower": {
                    "members": s.members,
                    "sets": sets,
                    "kernel": labels(h, &s.kernel),
                }
            }))
        }
    }
}

fn sunflower(cmd: &SunflowerCmd, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    match cmd {
        SunflowerCmd::Find(a) => {
            let h = ctx.load(&a.input)?;
            Ok(sunflower_output(&h, find_sunflower_exact(&h, a.r)?))
        }
        SunflowerCmd::Er(a) => {
            let h = ctx.load(&a.input)?;
            Ok(sunflower_output(&h, extract_er(&h, a.r)?))
        }
        SunflowerCmd::Vc1(a) => {
            let h = ctx.load(&a.input)?;
            Ok(sunflower_output(&h, Some(extract_vc1(&h, a.r)?)))
        }
        SunflowerCmd::Partition(a) => {
            let h = ctx.load(&a.input)?;
            Ok(sunflower_output(&h, disjoint_via_partition(&h, a.r, a.trials, a.seed)?).seed(a.seed))
        }
        SunflowerCmd::Witness(a) => {
            let h = ctx.load(&a.input)?;
            Ok(match witness_or_sunflower(&h, a.r)? {
                WitnessOutcome::Sunflower(s) => {
                    let mut out = sunflower_output(&h, Some(s));
                    out.outcome = "sunflower".into();
                    out.lines[0] = "outcome: sunflower".into();
                    out
                }
                WitnessOutcome::Witness(w) => CommandOutput::new(Status::Success, "witness")
                    .line("outcome: witness")
                    .line(format!("x: {}", h.label(w.x)))
                    .line(format!("y: {}", h.label(w.y)))
                    .line(format!("S_x: {}", show_set(&h, h.member(w.s_x))))
                    .line(format!("S_y: {}", show_set(&h, h.member(w.s_y))))
                    .line(format!("S_xy: {}", show_set(&h, h.member(w.s_xy))))
                    .result(json!({
                        "witness": {
                            "x": h.label(w.x),
                            "y": h.label(w.y),
                            "s_x": w.s_x,
                            "s_y": w.s_y,
                            "s_xy": w.s_xy,
                        }
                    })),
                WitnessOutcome::Inconclusive => CommandOutput::new(Status::Negative, "inconclusive")
                    .line("outcome: inconclusive")
                    .result(json!({ "inconclusive": true })),
            })
        }
        SunflowerCmd::ThresholdSweep(a) => {
            let h = ctx.load(&a.input)?;
            if a.r_min < 1 || a.r_min > a.r_max {
                return Err(Error::InvalidInput("need 1 <= r-min <= r-max".into()));
            }
            let ell = h.ell() as u64;
            let mut csv = String::from(
                "r,members,ell,vc1_threshold,er_bound,above_vc1_threshold,above_er_bound,exact_found,exact_kernel_size,er_found\n",
            );
            for r in a.r_min..=a.r_max {
                let size = BigUint::from(h.len());
                let t1 = vc1_threshold(r as u64, ell)?;
                let t2 = er_bound(r as u64, ell)?;
                let exact = find_sunflower_exact(&h, r)?;
                let er = extract_er(&h, r)?;
                writeln!(
                    csv,
                    "{r},{},{ell},{t1},{t2},{},{},{},{},{}",
                    h.len(),
                    size > t1,
                    size > t2,
                    exact.is_some(),
                    exact.as_ref().map(|s| s.kernel.len().to_string()).unwrap_or_default(),
                    er.is_some()
                )
                .expect("writing to a string");
            }
            Ok(CommandOutput::raw(csv))
        }
    }
}

fn spread(cmd: &SpreadCmd, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    match cmd {
        SpreadCmd::Decompose { input, w, t, chooser } => {
            let h = ctx.load(input)?;
            let w = parse_subset(&h, w)?;
            let d = decompose(&h, &w, *t, chooser.rule())?;
            let mut out = CommandOutput::new(Status::Success, "ok")
                .line(format!("W: {}", show_set(&h, &d.w)))
                .line(format!("t: {}", d.t));
            for (i, s) in h.members().iter().enumerate() {
                out = out.line(format!(
                    "{} -> F = {}, F* = {}",
                    show_set(&h, s),
                    show_set(&h, &d.chooser[i]),
                    show_set(&h, &d.f_star[i])
                ));
            }
            let show_all = |fam: &SetSystem| -> String {
                fam.members().iter().map(|m| show_set(&h, m)).collect::<Vec<_>>().join(" ")
            };
            let all = |sets: &[crate::ElementSubset]| -> Vec<Vec<String>> {
                sets.iter().map(|m| labels(&h, m)).collect()
            };
            out = out
                .line(format!("small: {}", show_all(&d.small)))
                .line(format!("large: {}", show_all(&d.large)));
            let out = out.result(json!({
                "w": labels(&h, &d.w),
                "t": d.t,
                "chooser": all(&d.chooser),
                "f_star": all(&d.f_star),
                "small": all(d.small.members()),
                "large": all(d.large.members()),
            }));
            Ok(match chooser.chooser {
                Chooser::Random => out.seed(chooser.seed),
                Chooser::Lex => out,
            })
        }
        SpreadCmd::Expectation { input, p, q, t, chooser } => {
            let h = ctx.load(input)?;
            let value = expectation_large_weight_limited(
                &h,
                p,
                q,
                *t,
                chooser.rule(),
                ctx.limits.expectation_max_ground,
            )?;
            let mut out_lines = vec![
                format!("expectation: {value}"),
                format!("expectation_approx: {:.6e}", value.to_f64().unwrap_or(f64::NAN)),
            ];
            let mut violated = false;
            let mut bounds = serde_json::Map::new();
            let pq_ok = is_probability(p) && *q > Rational::from_integer(0.into()) && *p >= q * Rational::from_integer(2.into());
            if pq_ok && !h.is_empty() {
                let d = vc_dimension_limited(&h, ctx.limits.vc_max_ground)?.dimension;
                let b = count_bound(h.ell(), d, q, p, *t)?;
                violated |= value > b;
                out_lines.push(format!("count_bound(d = {d}): {b}"));
                bounds.insert("count_bound".into(), json!(b.to_string()));
                if vc1_count_hypothesis(&h) {
                    let b1 = count_bound_vc1(q, p, *t)?;
                    violated |= value > b1;
                    out_lines.push(format!("count_bound_vc1: {b1}"));
                    bounds.insert("count_bound_vc1".into(), json!(b1.to_string()));
                }
            } else {
                out_lines.push("bounds: not applicable (need p >= 2q > 0 and a nonempty family)".into());
            }
            let status = Status::from_bool(!violated);
            let mut out = CommandOutput::new(status, if violated { "violated" } else { "holds" })
                .line(format!("outcome: {}", if violated { "violated" } else { "holds" }));
            for l in out_lines {
                out = out.line(l);
            }
            Ok(out.result(json!({ "expectation": value.to_string(), "bounds": bounds })))
        }
    }
}

fn dichotomy_lines(r: &DichotomyReport) -> Vec<String> {
    vec![
        format!("outcome: {}", if r.holds() { "holds" } else { "violated" }),
        format!("variant: {}", r.variant),
        format!("constant: {}", r.constant_used),
        format!("p: {} (~{:.6})", r.p_evaluated, r.p_evaluated.to_f64().unwrap_or(f64::NAN)),
        format!(
            "min_cover_weight: {} (threshold {})",
            r.min_cover_weight, r.cover_threshold
        ),
        format!("prob_upset: {} (~{:.6})", r.prob_upset, r.prob_upset.to_f64().unwrap_or(f64::NAN)),
        format!("branch1_holds: {}", r.branch1_holds),
        format!("branch2_holds: {}", r.branch2_holds),
    ]
}

fn kk(cmd: &KkCmd, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    match cmd {
        KkCmd::Check { input, kk, q, epsilon } => {
            let h = ctx.load(input)?;
            let r = kk_dichotomy_with(&h, q, epsilon, kk.variant, kk.constant.as_ref(), &ctx.limits)?;
            let mut out = CommandOutput::new(
                Status::from_bool(r.holds()),
                if r.holds() { "holds" } else { "violated" },
            );
            for l in dichotomy_lines(&r) {
                out = out.line(l);
            }
            let mut cover = String::from("best_cover:");
            for piece in r.best_cover.pieces.members() {
                cover.push(' ');
                cover.push_str(&show_set(&h, piece));
            }
            Ok(out.line(cover).result(&r))
        }
        KkCmd::Sweep { input, kk, q_grid, epsilon_grid } => {
            let h = ctx.load(input)?;
            let qs = parse_rational_list(q_grid)?;
            let eps = parse_rational_list(epsilon_grid)?;
            let mut csv = String::from(
                "q,epsilon,p,min_cover_weight,prob_upset,branch1_holds,branch2_holds\n",
            );
            let mut all = true;
            for q in &qs {
                for e in &eps {
                    let r = kk_dichotomy_with(&h, q, e, kk.variant, kk.constant.as_ref(), &ctx.limits)?;
                    all &= r.holds();
                    writeln!(
                        csv,
                        "{q},{e},{},{},{},{},{}",
                        r.p_evaluated, r.min_cover_weight, r.prob_upset, r.branch1_holds, r.branch2_holds
                    )
                    .expect("writing to a string");
                }
            }
            let mut out = CommandOutput::raw(csv);
            out.status = Status::from_bool(all);
            Ok(out)
        }
    }
}

fn bounds(cmd: &BoundsCmd) -> Result<CommandOutput> {
    let value = match cmd {
        BoundsCmd::Logstar { x: Some(x), .. } => log_star_smoothed(&parse_biguint(x)?)?.to_string(),
        BoundsCmd::Logstar { pow2: Some(e), .. } => log_star_smoothed_pow2(&parse_biguint(e)?)?.to_string(),
        BoundsCmd::Logstar { .. } => return Err(Error::InvalidInput("need --x or --pow2".into())),
        BoundsCmd::Lambda { d, ell } => lambda_d(*d, *ell)?.to_string(),
        BoundsCmd::ErBound { r, ell } => er_bound(*r, *ell)?.to_string(),
        BoundsCmd::Vc1Threshold { r, ell } => vc1_threshold(*r, *ell)?.to_string(),
        BoundsCmd::EllZero { d, epsilon } => ell_zero(*d, epsilon)?.to_string(),
        BoundsCmd::SauerShelah { n, d } => sauer_shelah_bound(*n, *d)?.to_string(),
    };
    Ok(CommandOutput::new(Status::Success, "ok")
        .line(value.clone())
        .result(json!({ "value": value })))
}

fn gen(args: &GenArgs, ctx: &mut Context<'_>) -> Result<CommandOutput> {
    let cfg = GeneratorConfig {
        n: args.n,
        ell: args.ell,
        family_size: args.size,
        seed: args.seed,
        kind: args.kind,
    };
    if args.count == 1 && args.output_dir.is_none() {
        return Ok(CommandOutput::raw(write_set_system(&random_family(&cfg)?, ctx.format)?));
    }
    let dir = args
        .output_dir
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--count above 1 needs --output-dir".into()))?;
    std::fs::create_dir_all(dir)?;
    let ext = match ctx.format {
        FileFormat::Text => "txt",
        FileFormat::Json => "json",
    };
    let families = corpus(&cfg, args.count)?;
    let mut files = Vec::with_capacity(families.len());
    for (i, h) in families.iter().enumerate() {
        let path = dir.join(format!("family-{i:04}.{ext}"));
        std::fs::write(&path, write_set_system(h, ctx.format)?)?;
        files.push(path.display().to_string());
    }
    Ok(CommandOutput::new(Status::Success, "ok")
        .seed(args.seed)
        .line(format!("wrote {} families to {}", files.len(), dir.display()))
        .result(json!({ "files": files })))
}
