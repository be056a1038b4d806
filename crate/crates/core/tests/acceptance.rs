//! Release gate: nine end-to-end checks, one PASS/FAIL line each.
//!
//! Run with `cargo test -p henkin-forge --test acceptance -- --nocapture`
//! to see the report.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use henkin_forge::coding::code;
use henkin_forge::corpus::{Theorem, CORPUS};
use henkin_forge::henkin::{complete, Extraction, Options, SubsetKind, SubsetProof};
use henkin_forge::kont::complete_prime;
use henkin_forge::nbe::{check_min, is_normal, normalize, MinFormula};
use henkin_forge::proof::{check, drinker, efq, henkin_ex, pi1, pi2, render_sketch, weaken};
use henkin_forge::semantics::Witness;
use henkin_forge::syntax::{alpha_eq, Formula, Theory, Var};
use num_bigint::BigUint;
use rand::Rng;

const GOLDEN_K: &str = include_str!("golden/k.tree");
const GOLDEN_K2: &str = include_str!("golden/k2.tree");

const EXTRACT_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(30);
const NBE_LIMIT: Duration = Duration::from_secs(10);
const ELABORATOR_CASES: usize = 500;
const MERGES: usize = 100;
const CODED_FORMULAS: usize = 10_000;
const NBE_PROOFS: usize = 50;
const REPLAY_LIMIT: usize = 32;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn formula(text: &str) -> Formula {
    henkin_forge::parse::parse_formula(text).expect("formula parses")
}

fn extract_golden(name: &str, goal: &str, golden: &str) -> Result<(Extraction, Duration), String> {
    let start = Instant::now();
    let witness = Witness::by_name(name).map_err(|e| e.to_string())?;
    let e = complete(&witness, &formula(goal), Options::default()).map_err(|e| e.to_string())?;
    let tree = render_sketch(e.proof.sketch());
    let elapsed = start.elapsed();
    ensure(tree == golden, || format!("tree differs from golden:\n{tree}"))?;
    ensure(e.ctx.is_empty(), || format!("context not empty: {:?}", e.ctx))?;
    ensure(elapsed < EXTRACT_LIMIT, || format!("took {elapsed:?}"))?;
    Ok((e, elapsed))
}

fn criterion_1() -> Outcome {
    let (_, t) = extract_golden("K", "X -> Y -> X", GOLDEN_K)?;
    Ok(format!("byte-equal to golden in {t:?}"))
}

fn criterion_2() -> Outcome {
    let (e, t) = extract_golden("K2", "X -> Y -> Y", GOLDEN_K2)?;
    // Both branches under the root refutation share the same subtree.
    let refutation = &e.proof.sketch().premises[0].premises[0];
    let [left, right] = &refutation.premises[..] else {
        return Err("root refutation is not binary".into());
    };
    ensure(left.premises[0] == right.premises[0], || {
        "the two branches do not share p1'".into()
    })?;
    Ok(format!("byte-equal to golden, p1' shared, in {t:?}"))
}

fn criterion_3() -> Outcome {
    let goal = formula("X -> X -> X");
    let run = |name: &str| {
        let w = Witness::by_name(name).map_err(|e| e.to_string())?;
        complete(&w, &goal, Options::default()).map_err(|e| e.to_string())
    };
    let (w1, w2) = (run("W1")?, run("W2")?);
    w1.proof.recheck().map_err(|e| e.to_string())?;
    w2.proof.recheck().map_err(|e| e.to_string())?;
    ensure(w1.proof.proof() != w2.proof.proof(), || {
        "W1 and W2 extract the same proof".into()
    })?;
    ensure(!w1.proof.sketch().same_shape(w2.proof.sketch()), || {
        "trees have the same shape".into()
    })?;
    Ok("W1 and W2 give distinct proof trees".into())
}

fn extract_theorem(t: &Theorem, kont: bool) -> Result<(Theory, Formula, Extraction), String> {
    let (theory, goal, proof) = t.parsed().map_err(|e| e.to_string())?;
    let witness = Witness::from_proof(theory.clone(), proof).map_err(|e| e.to_string())?;
    let e = if kont {
        complete_prime(&witness, &goal, Options::default())
    } else {
        complete(&witness, &goal, Options::default())
    }
    .map_err(|e| format!("{}: {e}", t.name))?;
    Ok((theory, goal, e))
}

/// `ctx ⊢ goal` re-checks and `ctx` lists theory members by index.
fn sequent_ok(name: &str, theory: &Theory, goal: &Formula, e: &Extraction) -> Result<(), String> {
    e.proof.recheck().map_err(|err| format!("{name}: {err}"))?;
    let found = check(e.proof.proof(), &e.ctx).map_err(|err| format!("{name}: {err}"))?;
    ensure(alpha_eq(&found, goal), || format!("{name}: proves {found}"))?;
    ensure(e.g.len() == e.ctx.len(), || format!("{name}: index list length"))?;
    for (i, a) in e.g.iter().zip(&e.ctx) {
        ensure(theory.member(*i) == Some(a), || {
            format!("{name}: `{a}` is not member {i}")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut kont_only = 0;
    for t in CORPUS {
        let (theory, goal, e) = extract_theorem(t, t.needs_kont)?;
        sequent_ok(t.name, &theory, &goal, &e)?;
        kont_only += usize::from(t.needs_kont);
    }
    let elapsed = start.elapsed();
    ensure(CORPUS.len() >= 20, || format!("only {} theorems", CORPUS.len()))?;
    ensure(elapsed < CORPUS_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{}/{} theorems ({kont_only} via kont) in {elapsed:?}",
        CORPUS.len(),
        CORPUS.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut counts = Vec::new();
    let mut rng = common::rng(5);
    let mut n = 0;
    for _ in 0..ELABORATOR_CASES {
        let c = common::weaken_case(&mut rng);
        let out = weaken(&c.witness, &c.proof, &c.src, &c.tgt).map_err(|e| e.to_string())?;
        let found = check(&out, &c.tgt).map_err(|e| format!("weaken: {e}\n{out}"))?;
        ensure(alpha_eq(&found, &c.formula), || format!("weaken proves {found}"))?;
        n += 1;
    }
    counts.push(("weaken", n));
    n = 0;
    for _ in 0..ELABORATOR_CASES {
        let (ctx, p, goal) = common::efq_case(&mut rng);
        let found = check(&efq(&p, &goal), &ctx).map_err(|e| format!("efq: {e}"))?;
        ensure(alpha_eq(&found, &goal), || format!("efq proves {found}"))?;
        n += 1;
    }
    counts.push(("efq", n));
    let (mut n1, mut n2) = (0, 0);
    for _ in 0..ELABORATOR_CASES {
        let (ctx, p, a, b) = common::imp_refutation_case(&mut rng);
        let gamma = &ctx[..ctx.len() - 1];
        let left = pi1(&p, &ctx).map_err(|e| e.to_string())?;
        let found = check(&left, gamma).map_err(|e| format!("pi1: {e}"))?;
        ensure(alpha_eq(&found, &a), || format!("pi1 proves {found}"))?;
        n1 += 1;
        let right = pi2(&p, &ctx).map_err(|e| e.to_string())?;
        let found = check(&right, gamma).map_err(|e| format!("pi2: {e}"))?;
        ensure(alpha_eq(&found, &Formula::not(b)), || format!("pi2 proves {found}"))?;
        n2 += 1;
    }
    counts.push(("pi1", n1));
    counts.push(("pi2", n2));
    n = 0;
    for _ in 0..ELABORATOR_CASES {
        let (ctx, p, y) = common::drinker_case(&mut rng);
        let out = drinker(&y, &p, &ctx).map_err(|e| e.to_string())?;
        let found = check(&out, &ctx[..ctx.len() - 1]).map_err(|e| format!("drinker: {e}"))?;
        ensure(found == Formula::Bot, || format!("drinker proves {found}"))?;
        n += 1;
    }
    counts.push(("drinker", n));
    n = 0;
    for _ in 0..ELABORATOR_CASES {
        let (ctx, p, x) = common::henkin_ex_case(&mut rng);
        let out = henkin_ex(&x, &p, &ctx).map_err(|e| e.to_string())?;
        let found = check(&out, &ctx[..ctx.len() - 1]).map_err(|e| format!("henkin_ex: {e}"))?;
        ensure(found == Formula::Bot, || format!("henkin_ex proves {found}"))?;
        n += 1;
    }
    counts.push(("henkin_ex", n));
    let summary: Vec<String> = counts.iter().map(|(r, n)| format!("{r} {n}/{n}")).collect();
    Ok(summary.join(", "))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    let enumeration = common::Enumeration::new(&mut rng, 12);
    for round in 0..MERGES {
        let (c1, p1) = enumeration.draw(&mut rng);
        let (c2, p2) = enumeration.draw(&mut rng);
        let u = c1.union(&c2);
        let swapped = c2.union(&c1);
        ensure(c1.union(&c1).ctx == c1, || {
            format!("round {round}: union not idempotent")
        })?;
        ensure(u.ctx.union(&u.ctx).ctx == u.ctx, || {
            format!("round {round}: union of union")
        })?;
        ensure(u.ctx.added == swapped.ctx.added, || {
            format!("round {round}: added parts differ")
        })?;
        ensure(u.ctx.is_sorted(), || format!("round {round}: union not sorted"))?;
        let joined = p1.hjoin(&p2).map_err(|e| e.to_string())?;
        ensure(joined.level() == p1.level().max(p2.level()), || {
            format!("round {round}: join level")
        })?;
        joined.validate(&u.ctx).map_err(|e| format!("round {round}: {e}"))?;
        let target = u.ctx.flatten();
        for (side, w) in [(&c1, &u.left), (&c2, &u.right)] {
            let src = side.flatten();
            for pos in 0..src.len() {
                let p = common::detours(&mut rng, common::hyp(&src, pos), &src, &src[pos]);
                let moved = weaken(w, &p, &src, &target).map_err(|e| e.to_string())?;
                let found = check(&moved, &target).map_err(|e| format!("round {round}: {e}"))?;
                ensure(alpha_eq(&found, &src[pos]), || {
                    format!("round {round}: weakened to {found}")
                })?;
            }
        }
    }
    Ok(format!(
        "{MERGES} merges: idempotent, commutative on added parts, sorted, join at max level, weakening re-checks"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let mut seen: HashMap<BigUint, Formula> = HashMap::new();
    let mut monotone_checks = 0usize;
    while seen.len() < CODED_FORMULAS {
        let vars = common::random_vars(&mut rng);
        let depth = rng.gen_range(0..5);
        let a = common::random_formula(&mut rng, &vars, depth);
        let c = code(&a);
        for v in a.free_vars() {
            if let Var::Fresh(k) = v {
                ensure(c >= k, || format!("code of `{a}` is below #{k}"))?;
                monotone_checks += 1;
            }
        }
        if let Some(b) = seen.get(&c) {
            ensure(*b == a, || format!("`{a}` and `{b}` share code {c}"))?;
        }
        seen.insert(c, a);
    }
    let n = BigUint::from(1_000_000_000u64);
    let start = Instant::now();
    let inj = SubsetProof::inj(n.clone());
    let elapsed = start.elapsed();
    let constant = match inj.kind() {
        SubsetKind::Skip { by, inner } => *by == n && matches!(inner.kind(), SubsetKind::Base(g) if g.is_empty()),
        _ => false,
    };
    ensure(constant && *inj.level() == n, || format!("inj(10^9) is {inj}"))?;
    ensure(elapsed < Duration::from_millis(10), || {
        format!("inj(10^9) took {elapsed:?}")
    })?;
    Ok(format!(
        "{} formulas, 0 collisions, {monotone_checks} witness bounds, inj(10^9) has 2 nodes",
        seen.len()
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(8);
    let mut tested = 0;
    while tested < NBE_PROOFS {
        let ctx: Vec<MinFormula> = (0..rng.gen_range(1..4))
            .map(|_| common::random_min_formula(&mut rng, 2))
            .collect();
        let p = common::random_min_proof(&mut rng, &ctx);
        if common::max_redex_nesting(&p) < 2 {
            continue;
        }
        let a = check_min(&p, &ctx).map_err(|e| e.to_string())?;
        let n = normalize(&p, &ctx).map_err(|e| e.to_string())?;
        ensure(is_normal(&n, &ctx), || format!("{n} is not beta-normal eta-long"))?;
        ensure(check_min(&n, &ctx).as_ref() == Ok(&a), || {
            format!("{n} changed the sequent")
        })?;
        let again = normalize(&n, &ctx).map_err(|e| e.to_string())?;
        ensure(again == n, || format!("not idempotent on {n}"))?;
        let reference = common::reference_normal(&p, &ctx);
        ensure(reference == n, || format!("{p}: nbe {n}, rewriting {reference}"))?;
        tested += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < NBE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{tested} proofs with nested redexes in {elapsed:?}"))
}

fn criterion_9() -> Outcome {
    let mut max_replays = 0;
    let mut compared = 0;
    for t in CORPUS.iter().filter(|t| !t.needs_kont) {
        let (theory, goal, core) = extract_theorem(t, false)?;
        let (_, _, kont) = extract_theorem(t, true)?;
        sequent_ok(t.name, &theory, &goal, &kont)?;
        ensure(core.ctx == kont.ctx && core.g == kont.g, || {
            format!("{}: core [{:?}] vs kont [{:?}]", t.name, core.g, kont.g)
        })?;
        ensure(kont.replays <= REPLAY_LIMIT, || {
            format!("{}: {} replays", t.name, kont.replays)
        })?;
        max_replays = max_replays.max(kont.replays);
        compared += 1;
    }
    Ok(format!(
        "{compared} theorems agree, at most {max_replays} replays per run"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("K extraction matches the golden tree", criterion_1),
        ("K2 extraction matches the golden tree", criterion_2),
        ("W1 and W2 extract distinct proofs", criterion_3),
        ("corpus round trip", criterion_4),
        ("elaborators on random premises", criterion_5),
        ("context algebra", criterion_6),
        ("formula coding", criterion_7),
        ("normalization by evaluation", criterion_8),
        ("kont engine agrees with core", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}: {title} ({detail})", i + 1),
            Err(why) => {
                println!("FAIL {}: {title} ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
