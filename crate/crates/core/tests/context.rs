mod common;

use henkin_forge::henkin::{HenkinContext, SubsetProof};
use henkin_forge::proof::{check, weaken};
use henkin_forge::syntax::{alpha_eq, Formula};
use num_bigint::BigUint;

fn draws(seed: u64, n: usize) -> Vec<(HenkinContext, SubsetProof)> {
    let mut rng = common::rng(seed);
    let e = common::Enumeration::new(&mut rng, 10);
    (0..n).map(|_| e.draw(&mut rng)).collect()
}

#[test]
fn drawn_subset_proofs_validate() {
    for (ctx, p) in draws(1, 200) {
        p.validate(&ctx).unwrap();
        assert!(ctx.is_sorted());
    }
}

#[test]
fn union_is_idempotent_and_sorted() {
    let ds = draws(2, 60);
    for (a, _) in &ds {
        assert_eq!(&a.union(a).ctx, a);
        for (b, _) in &ds {
            let u = a.union(b);
            assert!(u.ctx.is_sorted());
            assert_eq!(u.ctx.union(&u.ctx).ctx, u.ctx);
        }
    }
}

#[test]
fn union_added_parts_commute() {
    let ds = draws(3, 40);
    for (a, _) in &ds {
        for (b, _) in &ds {
            assert_eq!(a.union(b).ctx.added, b.union(a).ctx.added);
            assert_eq!(a.union(b).ctx.base, b.union(a).ctx.base);
        }
    }
}

#[test]
fn union_witnesses_embed_both_sides() {
    let ds = draws(4, 30);
    for (a, _) in &ds {
        for (b, _) in &ds {
            let u = a.union(b);
            let target = u.ctx.flatten();
            for (side, w) in [(a, &u.left), (b, &u.right)] {
                let src = side.flatten();
                assert_eq!(w.source_len(), src.len());
                assert_eq!(w.target_len(), target.len());
                for (s, t) in w.positions().into_iter().enumerate() {
                    assert!(alpha_eq(&src[s], &target[t]));
                }
            }
        }
    }
}

#[test]
fn weakening_into_a_union_rechecks() {
    let mut rng = common::rng(5);
    let e = common::Enumeration::new(&mut rng, 10);
    for _ in 0..100 {
        let (a, _) = e.draw(&mut rng);
        let (b, _) = e.draw(&mut rng);
        let u = a.union(&b);
        let src = a.flatten();
        let target = u.ctx.flatten();
        // The marker refutes itself against a conjunction of everything.
        let all = src
            .iter()
            .skip(1)
            .fold(src[0].clone(), |acc, f| Formula::and(acc, f.clone()));
        let mut p = common::hyp(&src, 0);
        for pos in 1..src.len() {
            p = henkin_forge::proof::ObjectProof::Pair(p.into(), common::hyp(&src, pos).into());
        }
        let moved = weaken(&u.left, &p, &src, &target).unwrap();
        assert!(alpha_eq(&check(&moved, &target).unwrap(), &all));
    }
}

#[test]
fn join_sits_at_the_higher_level_and_validates() {
    let ds = draws(6, 40);
    for (a, p) in &ds {
        for (b, q) in &ds {
            let j = p.hjoin(q).unwrap();
            assert_eq!(j.level(), p.level().max(q.level()));
            j.validate(&a.union(b).ctx).unwrap();
        }
    }
}

#[test]
fn join_with_itself_is_itself() {
    for (ctx, p) in draws(7, 50) {
        let j = p.hjoin(&p).unwrap();
        assert_eq!(j.level(), p.level());
        j.validate(&ctx).unwrap();
    }
}

#[test]
fn injection_is_constant_size() {
    for n in [0u64, 1, 1_000, 1_000_000_000, u64::MAX] {
        let p = SubsetProof::inj(BigUint::from(n));
        assert_eq!(p.level(), &BigUint::from(n));
        let ctx = HenkinContext::new(Formula::not(Formula::prop("G")));
        p.validate(&ctx).unwrap();
        assert!(p.to_string().len() < 40, "{p}");
    }
}

#[test]
fn lifts_merge() {
    let base = SubsetProof::base(vec![]);
    let twice = SubsetProof::skip(BigUint::from(3u32), SubsetProof::skip(BigUint::from(4u32), base));
    assert_eq!(twice.to_string(), "IS^7(I0[])");
}
