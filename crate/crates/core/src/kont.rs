//! Extraction with disjunction and existentials.
//!
//! Reflection now returns a computation in the continuation monad over
//! refutations of `T0, ~A0`. The universal shift `dns_forall` is realised by
//! replaying its continuation: the n-th lookup of a run is answered from a
//! log of earlier answers; past the end of the log it raises a demand, and
//! the handler computes the answer through its own continuation, which
//! re-runs the continuation with the log extended by one.

use std::cell::{Cell, RefCell};
use std::rc::{Rc, Weak};

use crate::coding::{henkin_witness, Discipline};
use crate::error::{Demand, DemandKey, Error, Result};
use crate::henkin::{
    finish, BotInT, Extraction, HenkinContext, Options, Refutation, Run, SOmegaMember, SubsetProof, SyntacticModel,
    Value,
};
use crate::proof::Derivation;
use crate::semantics::{shape, SemValue, Side, Witness};
use crate::syntax::{alpha_eq, Formula, Substitution, Term, Var};

/// A continuation receiving evidence.
pub type Cont<V> = Rc<dyn Fn(V) -> Result<BotInT>>;

/// `(V => T0, ~A0 ⊢ _|_) => T0, ~A0 ⊢ _|_`.
pub type Kont<V> = Rc<dyn Fn(Cont<V>) -> Result<BotInT>>;

/// A total function on indices that may raise a demand.
pub type Lookup<Key, V> = Rc<dyn Fn(Key) -> Result<V>>;

pub fn unit<V: Clone + 'static>(v: V) -> Kont<V> {
    Rc::new(move |k: Cont<V>| k(v.clone()))
}

pub fn kont<V>(f: impl Fn(Cont<V>) -> Result<BotInT> + 'static) -> Kont<V> {
    Rc::new(f)
}

fn cont<V>(f: impl Fn(V) -> Result<BotInT> + 'static) -> Cont<V> {
    Rc::new(f)
}

/// Semantic ex falso: truth of `A` under `sigma` from a refutation.
pub fn efq_truth(run: &Rc<Run>, a: &Formula, sigma: &Substitution, b: &BotInT) -> Result<Value> {
    match a {
        Formula::Atom(..) => {
            let ctx = HenkinContext {
                base: b.g.iter().copied().zip(b.ctx.iter().cloned()).collect(),
                marker: run.marker.clone(),
                added: Vec::new(),
            };
            let proof = b.proof.efq(&a.subst(sigma))?;
            Ok(SemValue::Atom(SOmegaMember {
                ctx,
                subset: SubsetProof::base(b.g.clone()),
                proof,
            }))
        }
        Formula::Bot => Ok(SemValue::Bot(b.clone())),
        Formula::Imp(_, rhs) => {
            let v = efq_truth(run, rhs, sigma, b)?;
            Ok(SemValue::imp(move |_| Ok(v.clone())))
        }
        Formula::Forall(x, body) => {
            let (run, x, body, s, b) = (run.clone(), x.clone(), (**body).clone(), sigma.clone(), b.clone());
            Ok(SemValue::forall(move |t| {
                efq_truth(&run, &body, &s.extended(x.clone(), t), &b)
            }))
        }
        Formula::And(l, r) => Ok(SemValue::and(
            efq_truth(run, l, sigma, b)?,
            efq_truth(run, r, sigma, b)?,
        )),
        Formula::Or(l, _) => Ok(SemValue::Or(Side::Left, Rc::new(efq_truth(run, l, sigma, b)?))),
        Formula::Exists(y, body) => {
            let d = Term::Var(efq_individual());
            let v = efq_truth(run, body, &sigma.extended(y.clone(), d.clone()), b)?;
            Ok(SemValue::Exists(d, Rc::new(v)))
        }
    }
}

/// The individual used by ex falso at an existential.
pub fn efq_individual() -> Var {
    Var::named("x")
}

/// Shift of double negation over implication.
pub fn dns_imp(
    run: &Rc<Run>,
    target: &Formula,
    sigma: &Substitution,
    h: impl Fn(Value) -> Result<Kont<Value>> + 'static,
) -> Kont<Value> {
    let (run, target, sigma, h) = (run.clone(), target.clone(), sigma.clone(), Rc::new(h));
    kont(move |k: Cont<Value>| {
        let (run, target, sigma, h, k2) = (run.clone(), target.clone(), sigma.clone(), h.clone(), k.clone());
        k(SemValue::imp(move |m_a| {
            let k3 = k2.clone();
            let b = h(m_a)?(cont(move |m_b: Value| k3(SemValue::imp(move |_| Ok(m_b.clone())))))?;
            efq_truth(&run, &target, &sigma, &b)
        }))
    })
}

/// Shift over conjunction: sequences the two computations.
pub fn dns_and<A: Clone + 'static, B: Clone + 'static>(h1: Kont<A>, h2: Kont<B>) -> Kont<(A, B)> {
    kont(move |k: Cont<(A, B)>| {
        let (h2, k) = (h2.clone(), k.clone());
        h1(cont(move |m1: A| {
            let k = k.clone();
            h2(cont(move |m2: B| k((m1.clone(), m2.clone()))))
        }))
    })
}

/// Index types that a replay handler can cache.
pub trait ReplayKey: Clone + 'static {
    fn same(&self, other: &Self) -> bool;
    fn demand(&self) -> DemandKey;
}

impl ReplayKey for Term {
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn demand(&self) -> DemandKey {
        DemandKey::Term(self.clone())
    }
}

impl ReplayKey for Formula {
    fn same(&self, other: &Self) -> bool {
        alpha_eq(self, other)
    }
    fn demand(&self) -> DemandKey {
        DemandKey::Formula(self.clone())
    }
}

impl ReplayKey for usize {
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn demand(&self) -> DemandKey {
        DemandKey::Member(*self)
    }
}

struct Replay<Key, V> {
    run: Rc<Run>,
    id: u64,
    handler: Rc<dyn Fn(Key) -> Result<Kont<V>>>,
    body: Cont<Lookup<Key, V>>,
    frames: RefCell<Vec<Rc<Frame<Key, V>>>>,
    pending: RefCell<Option<Key>>,
}

/// One run of the continuation: the answers given so far, in call order,
/// and how many of them this run has consumed.
struct Frame<Key, V> {
    log: Rc<Vec<(Key, V)>>,
    pos: Cell<usize>,
}

fn lookup<Key: ReplayKey, V: Clone + 'static>(state: &Weak<Replay<Key, V>>, key: Key) -> Result<V> {
    let state = state
        .upgrade()
        .ok_or_else(|| Error::MalformedSubset("lookup outside its shift".into()))?;
    let top = state.frames.borrow().last().cloned();
    let demand = Demand {
        handler: state.id,
        key: key.demand(),
    };
    let Some(frame) = top else {
        return Err(Error::Demand(demand));
    };
    let pos = frame.pos.get();
    if let Some((logged, v)) = frame.log.get(pos) {
        if !logged.same(&key) {
            return Err(Error::MalformedSubset(format!(
                "replay diverged: expected a demand for {}, got {}",
                logged.demand(),
                demand.key
            )));
        }
        frame.pos.set(pos + 1);
        return Ok(v.clone());
    }
    *state.pending.borrow_mut() = Some(key);
    Err(Error::Demand(demand))
}

fn solve<Key: ReplayKey, V: Clone + 'static>(state: Rc<Replay<Key, V>>, log: Rc<Vec<(Key, V)>>) -> Result<BotInT> {
    let weak = Rc::downgrade(&state);
    let f: Lookup<Key, V> = Rc::new(move |key| lookup(&weak, key));
    state.frames.borrow_mut().push(Rc::new(Frame {
        log: log.clone(),
        pos: Cell::new(0),
    }));
    let result = (state.body)(f);
    state.frames.borrow_mut().pop();
    match result {
        Err(Error::Demand(d)) if d.handler == state.id => {
            let key = state
                .pending
                .borrow_mut()
                .take()
                .expect("a demand from this handler records its key");
            state.run.count_replay(d.key.to_string())?;
            let next = {
                let (state, key) = (state.clone(), key.clone());
                cont(move |v: V| {
                    let mut grown = (*log).clone();
                    grown.push((key.clone(), v));
                    solve(state.clone(), Rc::new(grown))
                })
            };
            (state.handler)(key)?(next)
        }
        other => other,
    }
}

/// Shift over a universal: hands the continuation a function defined on
/// every index, computing values on demand.
pub fn dns_forall<Key: ReplayKey, V: Clone + 'static>(
    run: &Rc<Run>,
    handler: impl Fn(Key) -> Result<Kont<V>> + 'static,
) -> Kont<Lookup<Key, V>> {
    let (run, handler) = (run.clone(), Rc::new(handler) as Rc<dyn Fn(Key) -> Result<Kont<V>>>);
    kont(move |k: Cont<Lookup<Key, V>>| {
        let state = Rc::new(Replay {
            run: run.clone(),
            id: run.fresh_handler(),
            handler: handler.clone(),
            body: k,
            frames: RefCell::new(Vec::new()),
            pending: RefCell::new(None),
        });
        solve(state, Rc::new(Vec::new()))
    })
}

/// `↑′`: a member proving `A[sigma]` to a computation of the truth of `A`.
pub fn reflect_prime(run: &Rc<Run>, a: &Formula, sigma: &Substitution, q: SOmegaMember) -> Kont<Value> {
    let (r, s) = (run.clone(), sigma.clone());
    match a {
        Formula::Atom(..) => unit(SemValue::Atom(q)),
        Formula::Bot => kont(move |_| r.flush(q.clone())),
        Formula::Imp(lhs, rhs) => {
            let (lhs, rhs2) = ((**lhs).clone(), (**rhs).clone());
            dns_imp(run, rhs, sigma, move |m_a| {
                let arg = reify_prime(&r, &lhs, &s, m_a)?;
                Ok(reflect_prime(&r, &rhs2, &s, r.app_imp(&q, &arg)?))
            })
        }
        Formula::Forall(x, body) => {
            let (x, body) = (x.clone(), (**body).clone());
            let shifted = dns_forall(run, move |t: Term| {
                let inst = r.app_forall(&q, &t)?;
                Ok(reflect_prime(&r, &body, &s.extended(x.clone(), t), inst))
            });
            map(shifted, |f: Lookup<Term, Value>| SemValue::forall(move |t| f(t)))
        }
        Formula::And(lhs, rhs) => {
            let halves = (|| Ok((r.proj(Side::Left, &q)?, r.proj(Side::Right, &q)?)))();
            let (ql, qr) = match halves {
                Ok(h) => h,
                Err(e) => return failing(e),
            };
            let both = dns_and(reflect_prime(run, lhs, sigma, ql), reflect_prime(run, rhs, sigma, qr));
            map(both, |(vl, vr)| SemValue::and(vl, vr))
        }
        Formula::Or(lhs, rhs) => {
            let (lhs, rhs) = ((**lhs).clone(), (**rhs).clone());
            kont(move |k: Cont<Value>| {
                let left = r.ax_imp(
                    &Formula::not(lhs.subst(&s)),
                    kont_or(&r, &lhs, &s, Side::Left, k.clone()),
                )?;
                let right = r.ax_imp(&Formula::not(rhs.subst(&s)), kont_or(&r, &rhs, &s, Side::Right, k))?;
                r.flush(r.case(&q, &left, &right)?)
            })
        }
        Formula::Exists(y, body) => {
            let (y, body) = (y.clone(), (**body).clone());
            let quantified = a.subst(sigma);
            kont(move |k: Cont<Value>| {
                let axiom = r.ax_exists(&quantified)?;
                let w = Term::Var(henkin_witness(&quantified));
                let inst = r.app_imp(&axiom, &q)?;
                let w2 = w.clone();
                reflect_prime(&r, &body, &s.extended(y.clone(), w), inst)(cont(move |m| {
                    k(SemValue::Exists(w2.clone(), Rc::new(m)))
                }))
            })
        }
    }
}

fn map<A: 'static, B: 'static>(h: Kont<A>, f: impl Fn(A) -> B + 'static) -> Kont<B> {
    let f = Rc::new(f);
    kont(move |k: Cont<B>| {
        let f = f.clone();
        h(cont(move |a| k(f(a))))
    })
}

fn failing<V: 'static>(e: Error) -> Kont<V> {
    let msg = e.to_string();
    let e = RefCell::new(Some(e));
    kont(move |_| {
        Err(e
            .borrow_mut()
            .take()
            .unwrap_or_else(|| Error::MalformedSubset(msg.clone())))
    })
}

/// Continuation stored with `~A_i` when reflecting a disjunction.
fn kont_or(run: &Rc<Run>, a: &Formula, sigma: &Substitution, side: Side, k: Cont<Value>) -> crate::henkin::RelConsK {
    let (run, a, sigma) = (run.clone(), a.clone(), sigma.clone());
    Rc::new(move |r: Refutation| {
        let k = k.clone();
        reflect_prime(&run, &a, &sigma, run.pi1(&r)?)(cont(move |m| k(SemValue::Or(side, Rc::new(m)))))
    })
}

/// `↓′`: truth of `A` under `sigma` to a member proving `A[sigma]`.
pub fn reify_prime(run: &Rc<Run>, a: &Formula, sigma: &Substitution, v: Value) -> Result<SOmegaMember> {
    match a {
        Formula::Atom(..) => v.into_atom(a),
        Formula::Bot => Ok(run.bot(v.into_bot(a)?)),
        Formula::Imp(lhs, rhs) => {
            let f = match v {
                SemValue::Imp(f) => f,
                _ => return Err(shape(a, "an implication")),
            };
            let (lhs, rhs, s, r) = ((**lhs).clone(), (**rhs).clone(), sigma.clone(), run.clone());
            let k = Rc::new(move |refutation: Refutation| {
                let (r2, rhs, s2, f, refutation2) = (r.clone(), rhs.clone(), s.clone(), f.clone(), refutation.clone());
                reflect_prime(&r, &lhs, &s, r.pi1(&refutation)?)(cont(move |m| {
                    let body = reify_prime(&r2, &rhs, &s2, f(m)?)?;
                    r2.flush(r2.app_imp(&r2.pi2(&refutation2)?, &body)?)
                }))
            });
            run.ax_imp(&a.subst(sigma), k)
        }
        Formula::Forall(x, body) => {
            let quantified = a.subst(sigma);
            let axiom = run.ax_forall(&quantified)?;
            let w = Term::Var(henkin_witness(&quantified));
            let instance = reify_prime(run, body, &sigma.extended(x.clone(), w.clone()), v.instantiate(w, a)?)?;
            run.app_imp(&axiom, &instance)
        }
        Formula::And(l, r) => {
            let (vl, vr) = v.components(a)?;
            let ql = reify_prime(run, l, sigma, vl)?;
            let qr = reify_prime(run, r, sigma, vr)?;
            run.pair(&ql, &qr)
        }
        Formula::Or(l, r) => match v {
            SemValue::Or(Side::Left, m) => {
                let q = reify_prime(run, l, sigma, (*m).clone())?;
                Ok(run.inj(Side::Left, &q, &r.subst(sigma)))
            }
            SemValue::Or(Side::Right, m) => {
                let q = reify_prime(run, r, sigma, (*m).clone())?;
                Ok(run.inj(Side::Right, &q, &l.subst(sigma)))
            }
            _ => Err(shape(a, "an injection")),
        },
        Formula::Exists(y, body) => match v {
            SemValue::Exists(d, m) => {
                let q = reify_prime(run, body, &sigma.extended(y.clone(), d.clone()), (*m).clone())?;
                run.exi(&d, &a.subst(sigma), &q)
            }
            _ => Err(shape(a, "a witness pair")),
        },
    }
}

/// Truth of `~~A -> A` for every formula `A`, as one computation.
pub fn classic0_prime(run: &Rc<Run>) -> Kont<Lookup<Formula, Value>> {
    let r = run.clone();
    dns_forall(run, move |a: Formula| {
        let id = Substitution::identity();
        let at = Formula::not(Formula::not(a.clone()));
        Ok(dns_imp(&r, &a, &id, move |m: Value| {
            let (m, at) = (m.clone(), at.clone());
            Ok(kont(move |k: Cont<Value>| {
                let refute = SemValue::imp(move |v| Ok(SemValue::Bot(k(v)?)));
                m.apply(refute, &at)?.into_bot(&Formula::Bot)
            }))
        }))
    })
}

fn member_hypothesis(run: &Rc<Run>, index: usize) -> Result<(Formula, SOmegaMember)> {
    let member = run.theory.member(index).ok_or(Error::MemberOutOfRange(index))?.clone();
    let ctx = HenkinContext {
        base: vec![(index, member.clone())],
        marker: run.marker.clone(),
        added: Vec::new(),
    };
    let proof = Derivation::ax(ctx.flatten().into(), 1)?;
    Ok((
        member,
        SOmegaMember {
            ctx,
            subset: SubsetProof::base(vec![index]),
            proof,
        },
    ))
}

/// Truth of every theory member, chained through the members in order.
pub fn init0_prime(run: &Rc<Run>) -> Kont<Rc<Vec<Value>>> {
    fn chain(run: Rc<Run>, next: usize, done: Rc<Vec<Value>>, k: Cont<Rc<Vec<Value>>>) -> Result<BotInT> {
        if next == run.theory.len() {
            return k(done);
        }
        let (member, q) = member_hypothesis(&run, next)?;
        let r = run.clone();
        reflect_prime(&run, &member, &Substitution::identity(), q)(cont(move |v| {
            let mut grown = (*done).clone();
            grown.push(v);
            chain(r.clone(), next + 1, Rc::new(grown), k.clone())
        }))
    }
    let run = run.clone();
    kont(move |k| chain(run.clone(), 0, Rc::new(Vec::new()), k))
}

/// The same as [`init0_prime`], with members computed on demand.
pub fn init0_prime_replay(run: &Rc<Run>) -> Kont<Lookup<usize, Value>> {
    let r = run.clone();
    dns_forall(run, move |i: usize| {
        let (member, q) = member_hypothesis(&r, i)?;
        Ok(reflect_prime(&r, &member, &Substitution::identity(), q))
    })
}

/// `M0′` for a given classical principle and theory table.
pub fn prime_model(run: &Rc<Run>, classic: Lookup<Formula, Value>, theory: Lookup<usize, Value>) -> Rc<SyntacticModel> {
    SyntacticModel::new(
        run.clone(),
        move |a, sigma| classic(a.subst(sigma)),
        move |i, _| theory(i),
    )
}

fn table(values: Rc<Vec<Value>>) -> Lookup<usize, Value> {
    Rc::new(move |i| values.get(i).cloned().ok_or(Error::MemberOutOfRange(i)))
}

/// Extraction for the full connective set, chaining the classical principle
/// and the theory truth through their continuations.
pub fn complete_prime(witness: &Witness, goal: &Formula, options: Options) -> Result<Extraction> {
    run_prime(witness, goal, options, false)
}

/// As [`complete_prime`] with theory members realised by replay.
pub fn complete_prime_replay(witness: &Witness, goal: &Formula, options: Options) -> Result<Extraction> {
    run_prime(witness, goal, options, true)
}

fn run_prime(witness: &Witness, goal: &Formula, options: Options, replay_members: bool) -> Result<Extraction> {
    witness.expect_formula(goal)?;
    let run = Run::new(witness.theory(), goal.clone(), Discipline::ThreeClass, options);
    let body = {
        let (run, witness, goal) = (run.clone(), witness.clone(), goal.clone());
        Rc::new(move |classic: Lookup<Formula, Value>, theory: Lookup<usize, Value>| {
            let model = prime_model(&run, classic, theory);
            let id = Substitution::identity();
            let truth = witness.eval(&model, &id)?;
            let proved = reify_prime(&run, &goal, &id, truth)?;
            run.flush(run.app_imp(&run.ax0()?, &proved)?)
        })
    };
    let members = run.clone();
    let refutation = classic0_prime(&run)(cont(move |c: Lookup<Formula, Value>| {
        let body = body.clone();
        if replay_members {
            init0_prime_replay(&members)(cont(move |t| body(c.clone(), t)))
        } else {
            init0_prime(&members)(cont(move |t| body(c.clone(), table(t))))
        }
    }))?;
    finish(&run, refutation)
}
