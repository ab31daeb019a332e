//! The full battery of conditions on `M = ι(x)` and `N = ι(η)`.

use num_traits::Zero;
use serde::Serialize;

use super::EmbeddingCandidate;
use crate::error::{invalid, Result};
use crate::exactmath::arith::{fmt_rational, is_integer};
use crate::quaternion::{Mat3, QuaternionAlgebra};
use crate::{QMatrix3, Quaternion, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub group: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub overall: bool,
    pub first_failure: Option<Check>,
    pub checks: Vec<Check>,
}

impl ConstraintReport {
    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.get(id).is_some_and(|c| c.pass)
    }
}

fn q_str(q: &Quaternion) -> String {
    let c = q.to_strings();
    format!("({}, {}, {}, {})", c[0], c[1], c[2], c[3])
}

const ROMAN: [&str; 9] = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"];
const ROMAN_UP: [&str; 9] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"];
const ROWS: [&str; 3] = ["i", "ii", "iii"];

struct Battery<'a> {
    alg: &'a QuaternionAlgebra,
    checks: Vec<Check>,
}

impl Battery<'_> {
    fn push(&mut self, id: impl Into<String>, group: &'static str, witness: Option<String>) {
        self.checks.push(Check {
            id: id.into(),
            group,
            pass: witness.is_none(),
            witness,
        });
    }

    /// Passes iff `value` is zero; the witness shows the nonzero value.
    fn zero(&mut self, id: impl Into<String>, group: &'static str, value: &Quaternion) {
        let w = (!value.is_zero()).then(|| format!("value {}", q_str(value)));
        self.push(id, group, w);
    }

    fn matrix_eq(&mut self, id: &str, group: &'static str, x: &QMatrix3, y: &QMatrix3) {
        let mut w = None;
        'outer: for i in 0..3 {
            for j in 0..3 {
                if x.e[i][j] != y.e[i][j] {
                    w = Some(format!(
                        "entry ({},{}): {} != {}",
                        i + 1,
                        j + 1,
                        q_str(&x.e[i][j]),
                        q_str(&y.e[i][j])
                    ));
                    break 'outer;
                }
            }
        }
        self.push(id, group, w);
    }

    fn m(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.alg.mul(x, y)
    }

    fn m3(&self, x: &Quaternion, y: &Quaternion, z: &Quaternion) -> Quaternion {
        self.alg.mul(&self.alg.mul(x, y), z)
    }
}

fn sc(q: &Rational) -> Quaternion {
    Quaternion::scalar(q.clone())
}

/// `Σ v_i X^i` over the power basis.
fn combo(alg: &QuaternionAlgebra, v: &[Rational; 3], x: &QMatrix3) -> QMatrix3 {
    let x2 = alg.mat3_mul(x, x);
    Mat3::scalar(v[0].clone())
        .add(&x.scale(&v[1]))
        .add(&x2.scale(&v[2]))
}

/// Evaluates every condition in canonical order. Entries outside the order are rejected.
pub fn check_candidate(cand: &EmbeddingCandidate) -> Result<ConstraintReport> {
    let order = &cand.order;
    for (name, mat) in [("M", &cand.m), ("N", &cand.n)] {
        for i in 0..3 {
            for j in 0..3 {
                if !order.contains(&mat.e[i][j]) {
                    return invalid(format!(
                        "{name} entry ({},{}) is not in the order",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    let cp = &cand.element.charpoly;
    if cp.degree() != Some(3) || !cp.is_monic() {
        return invalid("the characteristic polynomial of M must be a monic cubic");
    }
    let alg = cand.alg();
    let (mm, nn) = (&cand.m, &cand.n);
    let mut bat = Battery {
        alg,
        checks: Vec::new(),
    };
    let [[a, b, c], [d, e, f], [g, h, l]] = mm.e.clone();
    let [[p, q, r], [s, t, u], [v, w, y]] = nn.e.clone();
    let cj = Quaternion::conj;

    // duality, entrywise
    let mut nonint = None;
    for (k, x) in [&a, &e, &l].into_iter().enumerate() {
        if !(x.is_scalar() && is_integer(&x.c[0])) {
            nonint = Some(format!(
                "{} = {} is not a rational integer",
                ["a", "e", "l"][k],
                q_str(x)
            ));
            break;
        }
    }
    bat.push("(int)", "duality", nonint);
    bat.zero("(b-d)", "duality", &d.sub(&cj(&b)));
    bat.zero("(c-g)", "duality", &g.sub(&cj(&c)));
    bat.zero("(f-h)", "duality", &h.sub(&cj(&f)));
    let mut tr = None;
    for (k, x) in [&p, &t, &y].into_iter().enumerate() {
        if !x.trd().is_zero() {
            tr = Some(format!(
                "Trd({}) = {}",
                ["p", "t", "y"][k],
                fmt_rational(&x.trd())
            ));
            break;
        }
    }
    bat.push("(trace)", "duality", tr);
    bat.zero("(q-s)", "duality", &s.add(&cj(&q)));
    bat.zero("(r-v)", "duality", &v.add(&cj(&r)));
    bat.zero("(u-w)", "duality", &w.add(&cj(&u)));

    // summary conditions
    let tr_img = combo(alg, &cand.element.eta_trace, mm);
    let nm_img = combo(alg, &cand.element.eta_norm, mm);
    let n_dag = nn.dagger();
    {
        let mut w5 = None;
        if !mm.is_hermitian() {
            w5 = Some("M is not hermitian".to_string());
        } else if n_dag != tr_img.sub(nn) {
            w5 = Some("N^dagger differs from the image of the conjugate of eta".to_string());
        }
        bat.push("(5)", "summary", w5);
    }
    let mn = alg.mat3_mul(mm, nn);
    let nm = alg.mat3_mul(nn, mm);
    bat.matrix_eq("(1a)", "summary", &mn, &nm);
    bat.push("(1b)", "summary", None);
    let cm = alg.mat3_eval_poly(&cand.element.charpoly, mm);
    bat.matrix_eq("(2)", "summary", &cm, &Mat3::zero());
    bat.matrix_eq("(3)", "summary", &alg.mat3_mul(nn, &n_dag), &nm_img);
    bat.matrix_eq("(4)", "summary", &nn.add(&n_dag), &tr_img);

    // commutativity, entrywise
    let comm = mn.sub(&nm);
    for i in 0..3 {
        for j in 0..3 {
            bat.zero(
                format!("({}-{})", ROWS[i], ROWS[j]),
                "commutativity",
                &comm.e[i][j],
            );
        }
    }

    // commutativity combined with duality, in the upper-triangular unknowns
    let (bb, cc, ff, qq, rr, uu) = (cj(&b), cj(&c), cj(&f), cj(&q), cj(&r), cj(&u));
    let rel: [Quaternion; 9] = [
        bat.m(&b, &qq)
            .add(&bat.m(&c, &rr))
            .add(&bat.m(&r, &cc))
            .add(&bat.m(&q, &bb)),
        bat.m(&p, &b)
            .add(&bat.m(&q, &e))
            .add(&bat.m(&r, &ff))
            .sub(&bat.m(&a, &q))
            .sub(&bat.m(&b, &t))
            .add(&bat.m(&c, &uu)),
        bat.m(&a, &r)
            .add(&bat.m(&b, &u))
            .add(&bat.m(&c, &y))
            .sub(&bat.m(&p, &c))
            .sub(&bat.m(&q, &f))
            .sub(&bat.m(&r, &l)),
        bat.m(&bb, &p)
            .sub(&bat.m(&e, &qq))
            .sub(&bat.m(&f, &rr))
            .add(&bat.m(&qq, &a))
            .sub(&bat.m(&t, &bb))
            .sub(&bat.m(&u, &cc)),
        bat.m(&bb, &q)
            .sub(&bat.m(&f, &uu))
            .add(&bat.m(&qq, &b))
            .sub(&bat.m(&u, &ff)),
        bat.m(&d, &r)
            .add(&bat.m(&e, &u))
            .add(&bat.m(&f, &y))
            .add(&bat.m(&qq, &c))
            .sub(&bat.m(&t, &f))
            .sub(&bat.m(&u, &l)),
        bat.m(&cc, &p)
            .sub(&bat.m(&ff, &qq))
            .add(&bat.m(&a.sub(&l), &rr))
            .add(&bat.m(&uu, &bb))
            .sub(&bat.m(&y, &cc)),
        bat.m(&cc, &q)
            .add(&bat.m(&ff, &t))
            .add(&bat.m(&e.sub(&l), &uu))
            .add(&bat.m(&rr, &b))
            .sub(&bat.m(&y, &ff)),
        bat.m(&cc, &r)
            .add(&bat.m(&ff, &u))
            .add(&bat.m(&rr, &c))
            .add(&bat.m(&uu, &f)),
    ];
    for (k, x) in rel.iter().enumerate() {
        bat.zero(format!("comm-dual-{}", k + 1), "comm-dual", x);
    }

    // characteristic polynomial, entrywise
    for i in 0..3 {
        for j in 0..3 {
            bat.zero(format!("({})", ROMAN[3 * i + j]), "charpoly", &cm.e[i][j]);
        }
    }

    // characteristic polynomial combined with duality
    let m1 = sc(&cp.coeff(2));
    let n1 = sc(&cp.coeff(1));
    let s1 = sc(&cp.coeff(0));
    let nrd = |x: &Quaternion| sc(&alg.nrd(x));
    let (nb, nc, nf) = (nrd(&b), nrd(&c), nrd(&f));
    let sum_n = nb.add(&nc).add(&nf);
    let two = |x: &Quaternion| x.add(x);
    let cube = |x: &Quaternion| bat.m3(x, x, x);
    let sq = |x: &Quaternion| bat.m(x, x);
    let tail = |x: &Quaternion| {
        cube(x)
            .add(&bat.m(&m1, &sq(x)))
            .add(&bat.m(&n1, x))
            .add(&s1)
    };
    let quad = |x: &Quaternion, z: &Quaternion| {
        sq(x)
            .add(&bat.m(x, z))
            .add(&sq(z))
            .add(&bat.m(&m1, x))
            .add(&bat.m(&m1, z))
            .add(&n1)
            .add(&sum_n)
    };
    let tot = a.add(&e).add(&l).add(&m1);
    let trd_q = |x: Quaternion| sc(&x.trd());
    let rels: [Quaternion; 9] = [
        bat.m(&two(&a).add(&e).add(&m1), &nb)
            .add(&bat.m(&two(&a).add(&l).add(&m1), &nc))
            .add(&trd_q(bat.m3(&b, &f, &cc)))
            .add(&tail(&a)),
        bat.m(&quad(&a, &e), &b).add(&bat.m(&tot, &bat.m(&c, &ff))),
        bat.m(&quad(&a, &l), &c).add(&bat.m(&tot, &bat.m(&b, &f))),
        bat.m(&quad(&a, &e), &bb).add(&bat.m(&tot, &bat.m(&f, &cc))),
        bat.m(&a.add(&two(&e)).add(&m1), &nb)
            .add(&bat.m(&two(&e).add(&l).add(&m1), &nf))
            .add(&trd_q(bat.m3(&bb, &c, &ff)))
            .add(&tail(&e)),
        bat.m(&quad(&e, &l), &f).add(&bat.m(&tot, &bat.m(&bb, &c))),
        bat.m(&quad(&a, &l), &cc)
            .add(&bat.m(&tot, &bat.m(&ff, &bb))),
        bat.m(&quad(&e, &l), &ff).add(&bat.m(&tot, &bat.m(&cc, &b))),
        bat.m(&a.add(&two(&l)).add(&m1), &nc)
            .add(&bat.m(&e.add(&two(&l)).add(&m1), &nf))
            .add(&trd_q(bat.m3(&cc, &b, &f)))
            .add(&tail(&l)),
    ];
    for (k, x) in rels.iter().enumerate() {
        bat.zero(format!("({})", ROMAN_UP[k]), "charpoly-dual", x);
    }

    // coefficient identities
    bat.zero("m1", "coefficients", &m1.add(&a).add(&e).add(&l));
    let n1_rhs = bat
        .m(&a, &e)
        .add(&bat.m(&e, &l))
        .add(&bat.m(&a, &l))
        .sub(&sum_n);
    bat.zero("n1", "coefficients", &n1.sub(&n1_rhs));
    let s1_rhs = bat
        .m(&a, &nf)
        .add(&bat.m(&e, &nc))
        .add(&bat.m(&l, &nb))
        .sub(&bat.m3(&a, &e, &l))
        .sub(&trd_q(bat.m3(&b, &f, &cc)));
    bat.zero("s1", "coefficients", &s1.sub(&s1_rhs));

    let first_failure = bat.checks.iter().find(|c| !c.pass).cloned();
    Ok(ConstraintReport {
        overall: first_failure.is_none(),
        first_failure,
        checks: bat.checks,
    })
}
