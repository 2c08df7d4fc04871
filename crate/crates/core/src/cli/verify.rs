//! Named invariant suites behind `verify`. Each property runs on seeded
//! random instances and reports one pass/fail line.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{lambda_d, log_star, log_star_smoothed, log_star_smoothed_pow2, HalfInteger};
use crate::gen::{pad_to_uniform, random_family, tree_family, GeneratorConfig, GeneratorKind};
use crate::setsystem::{core, minimal_sets, trace, upset_contains};
use crate::spread::{
    count_bound, decompose, expectation_large_weight_exact, reduced_family, ChooserRule,
};
use crate::sunflower::{
    extract_er, extract_vc1, find_sunflower_exact, is_sunflower, witness_or_sunflower,
    WitnessOutcome,
};
use crate::threshold::{kk_dichotomy, min_cover_weight, prob_upset_exact, DichotomyVariant};
use crate::vc::{sauer_shelah_bound, shatters, vc_at_most, vc_dimension, vc_dimension_limited};
use crate::{ElementSubset, Rational, SetSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Setsystem,
    Vc,
    Bounds,
    Sunflower,
    Spread,
    Threshold,
    Gen,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;

fn check(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { name: name.to_string(), passed, detail }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_suite(suite: Suite, seed: u64, instances: usize) -> Vec<Check> {
    let all = [
        Suite::Setsystem,
        Suite::Vc,
        Suite::Bounds,
        Suite::Sunflower,
        Suite::Spread,
        Suite::Threshold,
        Suite::Gen,
    ];
    let chosen: Vec<Suite> = if suite == Suite::All { all.to_vec() } else { vec![suite] };
    let mut out = Vec::new();
    for s in chosen {
        let v = Verifier { seed, instances };
        out.extend(match s {
            Suite::Setsystem => v.setsystem(),
            Suite::Vc => v.vc(),
            Suite::Bounds => v.bounds(),
            Suite::Sunflower => v.sunflower(),
            Suite::Spread => v.spread(),
            Suite::Threshold => v.threshold(),
            Suite::Gen => v.gen(),
            Suite::All => unreachable!(),
        });
    }
    out
}

struct Verifier {
    seed: u64,
    instances: usize,
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSubset> {
    (0u64..1 << n).map(ElementSubset::from_mask)
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

impl Verifier {
    /// Uniform random families with `n` in `2..=max_n`.
    fn families(&self, salt: u64, max_n: usize, max_size: usize) -> Vec<SetSystem> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        (0..self.instances)
            .map(|_| {
                let n = rng.gen_range(2..=max_n);
                let ell = rng.gen_range(1..=n);
                let cap = sauer_shelah_bound(n, ell).unwrap();
                let cap = usize::try_from(cap).unwrap_or(usize::MAX).min(max_size);
                let cfg = GeneratorConfig {
                    n,
                    ell,
                    family_size: rng.gen_range(1..=cap),
                    seed: rng.gen(),
                    kind: GeneratorKind::UniformRandom,
                };
                random_family(&cfg).expect("sizes are within range")
            })
            .collect()
    }

    fn setsystem(&self) -> Vec<Check> {
        let fams = self.families(1, 6, 12);
        vec![
            check("trace-idempotent", || {
                for h in &fams {
                    for u in subsets(h.ground_size()) {
                        let t = trace(h, &u).map_err(|e| e.to_string())?;
                        let tt = trace(&t, &t.ground()).map_err(|e| e.to_string())?;
                        ensure(t == tt, || format!("trace not idempotent on {h:?}, U = {u:?}"))?;
                    }
                }
                Ok(format!("{} families, all U", fams.len()))
            }),
            check("upset-monotone", || {
                for h in &fams {
                    for a in subsets(h.ground_size()) {
                        if upset_contains(h, &a) {
                            for x in 0..h.ground_size() {
                                ensure(upset_contains(h, &a.with(x)), || format!("{h:?}: {a:?} + {x}"))?;
                            }
                        }
                    }
                }
                Ok(format!("{} families, all A", fams.len()))
            }),
            check("minimal-sets", || {
                for h in &fams {
                    let m = minimal_sets(h);
                    for a in m.members() {
                        for b in m.members() {
                            ensure(a == b || !a.is_subset(b), || format!("{h:?}: not an antichain"))?;
                        }
                    }
                    for a in subsets(h.ground_size()) {
                        ensure(upset_contains(h, &a) == upset_contains(&m, &a), || {
                            format!("{h:?}: upsets differ at {a:?}")
                        })?;
                    }
                }
                Ok(format!("{} families", fams.len()))
            }),
            check("core", || {
                for h in &fams {
                    for a in subsets(h.ground_size()) {
                        let inside: Vec<&ElementSubset> = h.members().iter().filter(|s| s.is_subset(&a)).collect();
                        match core(h, &a) {
                            Ok(c) => {
                                let brute = inside.iter().fold(a, |acc, s| acc.intersection(s));
                                ensure(!inside.is_empty() && c == brute && c.is_subset(&a), || {
                                    format!("{h:?}: core({a:?}) = {c:?}, expected {brute:?}")
                                })?;
                            }
                            Err(_) => ensure(inside.is_empty(), || format!("{h:?}: core({a:?}) refused"))?,
                        }
                    }
                }
                Ok(format!("{} families, all A", fams.len()))
            }),
        ]
    }

    fn vc(&self) -> Vec<Check> {
        let fams = self.families(2, 7, 20);
        vec![
            check("vc-brute-force", || {
                for h in &fams {
                    let brute = subsets(h.ground_size()).filter(|t| shatters(h, t)).map(|t| t.len()).max().unwrap();
                    let got = vc_dimension(h).map_err(|e| e.to_string())?.dimension;
                    ensure(got == brute, || format!("{h:?}: {got} vs {brute}"))?;
                }
                Ok(format!("{} families", fams.len()))
            }),
            check("sauer-shelah-and-trace-monotone", || {
                for h in &fams {
                    let d = vc_dimension(h).map_err(|e| e.to_string())?.dimension;
                    for u in subsets(h.ground_size()) {
                        let t = trace(h, &u).map_err(|e| e.to_string())?;
                        let du = vc_dimension(&t).map_err(|e| e.to_string())?.dimension;
                        let bound = sauer_shelah_bound(u.len(), d.min(u.len())).unwrap();
                        ensure(BigUint::from(t.len()) <= bound, || format!("{h:?}: |trace on {u:?}| too large"))?;
                        ensure(du <= d, || format!("{h:?}: VC of trace on {u:?} is {du} > {d}"))?;
                    }
                }
                Ok(format!("{} families, all U", fams.len()))
            }),
        ]
    }

    fn bounds(&self) -> Vec<Check> {
        vec![
            check("logstar-intervals", || {
                let table = [(16, 7), (17, 8), (100, 8), (256, 8), (257, 9), (300, 9), (65536, 9), (65537, 10)];
                for (x, twice) in table {
                    let got = log_star(x).map_err(|e| e.to_string())?;
                    ensure(got == HalfInteger::from_twice(twice), || format!("log*({x}) = {got}"))?;
                }
                Ok(format!("{} points", table.len()))
            }),
            check("logstar-shift-identity", || {
                for x in 1u64..=1 << 16 {
                    let lhs = log_star_smoothed_pow2(&BigUint::from(x)).map_err(|e| e.to_string())?;
                    let rhs = log_star(x).map_err(|e| e.to_string())? + HalfInteger::from_integer(1);
                    ensure(lhs == rhs, || format!("x = {x}: {lhs} vs {rhs}"))?;
                }
                for x in 1u32..=300 {
                    let direct = log_star_smoothed(&(BigUint::one() << x)).map_err(|e| e.to_string())?;
                    let rhs = log_star(x as u64).map_err(|e| e.to_string())? + HalfInteger::from_integer(1);
                    ensure(direct == rhs, || format!("materialised 2^{x}: {direct} vs {rhs}"))?;
                }
                Ok("x in [1, 2^16]".into())
            }),
            check("logstar-square-claim", || {
                for x in 9u64..=1 << 16 {
                    let lhs = log_star(x * x).map_err(|e| e.to_string())? + HalfInteger::HALF;
                    let rhs = log_star_smoothed_pow2(&BigUint::from(x)).map_err(|e| e.to_string())?;
                    ensure(lhs <= rhs, || format!("x = {x}: {lhs} > {rhs}"))?;
                }
                Ok("8 < x <= 2^16".into())
            }),
            check("lambda", || {
                for (d, ell, twice) in [(2, 100, 12), (2, 50, 10), (2, 20, 8)] {
                    let got = lambda_d(d, ell).map_err(|e| e.to_string())?;
                    ensure(got == HalfInteger::from_twice(twice), || format!("lambda_{d}({ell}) = {got}"))?;
                }
                Ok("3 points".into())
            }),
        ]
    }

    fn sunflower(&self) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 3);
        vec![
            check("tree-sharpness", || {
                for r in 3..=5usize {
                    for ell in 1..=3usize {
                        let t = tree_family(r, ell).map_err(|e| e.to_string())?;
                        ensure(t.len() == (r - 1).pow(ell as u32), || format!("tree({r},{ell}) size"))?;
                        let d = vc_dimension_limited(&t, usize::MAX).map_err(|e| e.to_string())?.dimension;
                        ensure(d == 1, || format!("tree({r},{ell}) has VC {d}"))?;
                        let s = find_sunflower_exact(&t, r).map_err(|e| e.to_string())?;
                        ensure(s.is_none(), || format!("tree({r},{ell}) has an {r}-sunflower"))?;
                    }
                }
                Ok("r in 3..=5, ell in 1..=3".into())
            }),
            check("vc1-extraction", || {
                let mut count = 0;
                for _ in 0..self.instances {
                    let r = rng.gen_range(3..=4usize);
                    let ell = rng.gen_range(1..=3usize);
                    let size = (r - 1).pow(ell as u32) + 1;
                    let cfg = GeneratorConfig {
                        n: 3 * size,
                        ell,
                        family_size: size,
                        seed: rng.gen(),
                        kind: GeneratorKind::ForestPath,
                    };
                    let h = random_family(&cfg).map_err(|e| e.to_string())?;
                    let s = extract_vc1(&h, r).map_err(|e| format!("{h:?}: {e}"))?;
                    ensure(s.validate(&h) && s.r() == r, || format!("{h:?}: invalid output"))?;
                    let w = witness_or_sunflower(&h, r).map_err(|e| e.to_string())?;
                    ensure(w != WitnessOutcome::Inconclusive, || format!("{h:?}: inconclusive"))?;
                    count += 1;
                }
                Ok(format!("{count} forest-path families"))
            }),
            check("erdos-rado-guarantee", || {
                for _ in 0..self.instances {
                    let cfg = GeneratorConfig {
                        n: 10,
                        ell: 3,
                        family_size: rng.gen_range(49..=80),
                        seed: rng.gen(),
                        kind: GeneratorKind::UniformRandom,
                    };
                    let h = random_family(&cfg).map_err(|e| e.to_string())?;
                    let s = extract_er(&h, 3).map_err(|e| e.to_string())?;
                    ensure(matches!(&s, Some(s) if s.validate(&h)), || format!("{h:?}: no sunflower"))?;
                }
                Ok(format!("{} families above 48 members", self.instances))
            }),
            check("exact-vs-naive", || {
                for h in self.families(4, 6, 8) {
                    for r in 2..=4usize {
                        let naive = naive_sunflower(&h, r);
                        let got = find_sunflower_exact(&h, r).map_err(|e| e.to_string())?;
                        ensure(naive == got.is_some(), || format!("{h:?}, r = {r}"))?;
                        if let Some(s) = got {
                            ensure(s.validate(&h), || format!("{h:?}: invalid certificate"))?;
                        }
                    }
                }
                Ok(format!("{} families, r in 2..=4", self.instances))
            }),
        ]
    }

    fn spread(&self) -> Vec<Check> {
        let fams = self.families(5, 4, 8);
        vec![
            check("decomposition-invariants", || {
                let mut cases = 0usize;
                for h in &fams {
                    let vc = vc_dimension(h).map_err(|e| e.to_string())?.dimension;
                    for w in subsets(h.ground_size()) {
                        let hw = reduced_family(h, &w).map_err(|e| e.to_string())?;
                        for t in 0..=h.ell() {
                            for rule in [ChooserRule::Lexicographic, ChooserRule::SeededRandom(self.seed)] {
                                let d = decompose(h, &w, t, rule).map_err(|e| e.to_string())?;
                                for (i, s) in h.members().iter().enumerate() {
                                    let (f, fs) = (d.chooser[i], d.f_star[i]);
                                    ensure(hw.contains_member(&f), || format!("{h:?}: F not in H_W"))?;
                                    ensure(f.is_subset(&fs) && fs.is_subset(s), || format!("{h:?}: chain fails"))?;
                                    ensure(fs.difference(&w) == f, || format!("{h:?}: F* \\ W != F"))?;
                                    ensure(d.small.members().iter().chain(d.large.members()).any(|g| g.is_subset(s)), || {
                                        format!("{h:?}: member not covered")
                                    })?;
                                }
                                ensure(d.small.is_empty() || d.small.ell() < t, || format!("{h:?}: small too large"))?;
                                ensure(d.large.members().iter().all(|g| g.difference(&w).len() >= t), || {
                                    format!("{h:?}: large too small")
                                })?;
                                if !d.small.is_empty() {
                                    let vs = vc_dimension(&d.small).map_err(|e| e.to_string())?.dimension;
                                    ensure(vs <= vc, || format!("{h:?}: VC(small) = {vs} > {vc}"))?;
                                }
                                for w2 in subsets(h.ground_size()) {
                                    if upset_contains(&d.small, &w2) {
                                        ensure(upset_contains(h, &w.union(&w2)), || format!("{h:?}: W ∪ W' not in upset"))?;
                                    }
                                }
                                cases += 1;
                            }
                        }
                    }
                }
                Ok(format!("{cases} (H, W, t, rule) cases"))
            }),
            check("count-bound", || {
                let (p, q) = (rat(1, 2), rat(1, 8));
                for h in fams.iter().take(self.instances.min(20)) {
                    let d = vc_dimension(h).map_err(|e| e.to_string())?.dimension;
                    for t in 0..=h.ell() {
                        let e = expectation_large_weight_exact(h, &p, &q, t, ChooserRule::Lexicographic)
                            .map_err(|e| e.to_string())?;
                        let b = count_bound(h.ell(), d, &q, &p, t).map_err(|e| e.to_string())?;
                        ensure(e <= b, || format!("{h:?}, t = {t}: {e} > {b}"))?;
                    }
                }
                Ok("p = 1/2, q = 1/8".into())
            }),
        ]
    }

    fn threshold(&self) -> Vec<Check> {
        let fams = self.families(6, 7, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 6);
        vec![
            check("kk-bell-dichotomy", || {
                for h in &fams {
                    let q = rat(1, 1 << rng.gen_range(0..7));
                    let eps = rat(1, 1 << rng.gen_range(1..4));
                    let r = kk_dichotomy(h, &q, &eps, DichotomyVariant::KkBell, None).map_err(|e| e.to_string())?;
                    ensure(r.holds(), || format!("{h:?}, q = {q}, eps = {eps}: neither branch"))?;
                }
                Ok(format!("{} instances", fams.len()))
            }),
            check("probability-monotone", || {
                for h in &fams {
                    let mut last = rat(0, 1);
                    for k in 0..=16 {
                        let p = prob_upset_exact(h, &rat(k, 16)).map_err(|e| e.to_string())?;
                        ensure(p >= last, || format!("{h:?}: decreasing at {k}/16"))?;
                        last = p;
                    }
                }
                Ok("p grid of 17 points".into())
            }),
            check("cover-certificates", || {
                for h in &fams {
                    let q = rat(1, rng.gen_range(1..9));
                    let c = min_cover_weight(h, &q).map_err(|e| e.to_string())?;
                    let trivial: Rational = h.members().iter().map(|s| Pow::pow(&q, s.len())).sum();
                    ensure(c.validate(h), || format!("{h:?}: invalid certificate"))?;
                    ensure(c.weight <= rat(1, 1) && c.weight <= trivial, || format!("{h:?}: weight too large"))?;
                }
                Ok(format!("{} instances", fams.len()))
            }),
        ]
    }

    fn gen(&self) -> Vec<Check> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 7);
        let configs: Vec<GeneratorConfig> = (0..self.instances)
            .map(|_| GeneratorConfig {
                n: rng.gen_range(4..=12),
                ell: rng.gen_range(1..=4),
                family_size: rng.gen_range(0..=4),
                seed: rng.gen(),
                kind: [GeneratorKind::UniformRandom, GeneratorKind::ForestPath, GeneratorKind::RejectionVc1]
                    [rng.gen_range(0..3)],
            })
            .collect();
        vec![
            check("deterministic", || {
                for cfg in &configs {
                    let a = random_family(cfg).map_err(|e| e.to_string())?;
                    let b = random_family(cfg).map_err(|e| e.to_string())?;
                    ensure(a == b && a.len() == cfg.family_size, || format!("{cfg:?}"))?;
                    ensure(a.ell() <= cfg.ell, || format!("{cfg:?}: too large a member"))?;
                    if cfg.kind != GeneratorKind::UniformRandom {
                        ensure(vc_at_most(&a, 1), || format!("{cfg:?}: VC above 1"))?;
                    }
                }
                Ok(format!("{} configs", configs.len()))
            }),
            check("padding", || {
                for h in self.families(8, 6, 8) {
                    let ell = h.ell() + 1;
                    let padded = pad_to_uniform(&h, ell).map_err(|e| e.to_string())?;
                    ensure(padded.back_map() == h, || format!("{h:?}: back-map differs"))?;
                    ensure(padded.system.members().iter().all(|s| s.len() == ell), || format!("{h:?}: not uniform"))?;
                    for r in 2..=3 {
                        if let Some(s) = find_sunflower_exact(&padded.system, r).map_err(|e| e.to_string())? {
                            ensure(s.kernel.iter().all(|x| !padded.is_padding(x)), || format!("{h:?}: padded kernel"))?;
                            let back = is_sunflower(&h, &s.members).map_err(|e| e.to_string())?;
                            ensure(back.is_some(), || format!("{h:?}: sunflower lost by back-map"))?;
                        }
                    }
                }
                Ok(format!("{} families", self.instances))
            }),
        ]
    }
}

fn naive_sunflower(h: &SetSystem, r: usize) -> bool {
    fn rec(h: &SetSystem, r: usize, start: usize, picked: &mut Vec<usize>) -> bool {
        if picked.len() == r {
            return matches!(is_sunflower(h, picked), Ok(Some(_)));
        }
        (start..h.len()).any(|i| {
            picked.push(i);
            let found = rec(h, r, i + 1, picked);
            picked.pop();
            found
        })
    }
    rec(h, r, 0, &mut Vec::new())
}
