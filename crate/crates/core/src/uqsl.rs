//! Words in `U_q sl_N`: the free algebra on `E_i, F_i, K_i^{±1}` with only
//! `K_i K_i^{-1} = 1` applied. Hopf structure, the *-structure of
//! `U_q su_{n,n}` and the adjoint action are defined on words.

use crate::error::{Error, Result};
use crate::scalars::{q_minus_qinv, Gauss, ScalarExpr};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum UGen {
    E(usize),
    F(usize),
    K(usize),
    Kinv(usize),
}

impl UGen {
    pub fn index(&self) -> usize {
        match *self {
            UGen::E(i) | UGen::F(i) | UGen::K(i) | UGen::Kinv(i) => i,
        }
    }

    fn inverse_of(&self, o: &UGen) -> bool {
        matches!((self, o), (UGen::K(a), UGen::Kinv(b)) | (UGen::Kinv(a), UGen::K(b)) if a == b)
    }
}

impl fmt::Display for UGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UGen::E(i) => write!(f, "E{}", i),
            UGen::F(i) => write!(f, "F{}", i),
            UGen::K(i) => write!(f, "K{}", i),
            UGen::Kinv(i) => write!(f, "Kinv{}", i),
        }
    }
}

fn push_letter(w: &mut Vec<UGen>, g: UGen) {
    if let Some(last) = w.last() {
        if last.inverse_of(&g) {
            w.pop();
            return;
        }
    }
    w.push(g);
}

fn concat(a: &[UGen], b: &[UGen]) -> Vec<UGen> {
    let mut w = a.to_vec();
    for &g in b {
        push_letter(&mut w, g);
    }
    w
}

/// A linear combination of words.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct UWord {
    terms: BTreeMap<Vec<UGen>, ScalarExpr>,
}

impl UWord {
    pub fn zero() -> UWord {
        UWord { terms: BTreeMap::new() }
    }

    pub fn one() -> UWord {
        UWord::word(vec![], ScalarExpr::one())
    }

    pub fn scalar(c: ScalarExpr) -> UWord {
        UWord::word(vec![], c)
    }

    pub fn gen(g: UGen) -> UWord {
        UWord::word(vec![g], ScalarExpr::one())
    }

    pub fn e(i: usize) -> UWord {
        UWord::gen(UGen::E(i))
    }

    pub fn f(i: usize) -> UWord {
        UWord::gen(UGen::F(i))
    }

    pub fn k(i: usize) -> UWord {
        UWord::gen(UGen::K(i))
    }

    pub fn kinv(i: usize) -> UWord {
        UWord::gen(UGen::Kinv(i))
    }

    pub fn word(letters: Vec<UGen>, c: ScalarExpr) -> UWord {
        let mut w = Vec::new();
        for g in letters {
            push_letter(&mut w, g);
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        UWord { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<UGen>, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, w: Vec<UGen>, c: &ScalarExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let s = e.add(c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, o: &UWord) -> UWord {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &UWord) -> UWord {
        self.add(&o.scale(&ScalarExpr::int(-1)))
    }

    pub fn scale(&self, c: &ScalarExpr) -> UWord {
        if c.is_zero() {
            return UWord::zero();
        }
        UWord { terms: self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))).collect() }
    }

    pub fn mul(&self, o: &UWord) -> UWord {
        let mut r = UWord::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                r.add_term(concat(wa, wb), &ca.mul(cb));
            }
        }
        r
    }

    pub fn product(ws: &[UWord]) -> UWord {
        ws.iter().fold(UWord::one(), |acc, w| acc.mul(w))
    }

    /// Largest generator index used.
    pub fn max_index(&self) -> usize {
        self.terms.keys().flat_map(|w| w.iter().map(|g| g.index())).max().unwrap_or(0)
    }

    /// Rejects indices outside `1..=rank`.
    pub fn check_rank(&self, rank: usize) -> Result<()> {
        for w in self.terms.keys() {
            for g in w {
                if g.index() == 0 || g.index() > rank {
                    return Err(Error::Index(format!("generator {} outside 1..{}", g, rank)));
                }
            }
        }
        Ok(())
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> UWord {
        let mut r = UWord::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), &f(c));
        }
        r
    }
}

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word: Vec<String> = w.iter().map(|g| g.to_string()).collect();
            match (c.is_one(), word.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", word.join("*"))?,
                (false, true) => write!(f, "({})", c)?,
                (false, false) => write!(f, "({})*{}", c, word.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A linear combination of `a ⊗ b` with `a`, `b` words.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct UTensor {
    pub terms: BTreeMap<(Vec<UGen>, Vec<UGen>), ScalarExpr>,
}

impl UTensor {
    fn add_term(&mut self, k: (Vec<UGen>, Vec<UGen>), c: &ScalarExpr) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(ScalarExpr::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn mul(&self, o: &UTensor) -> UTensor {
        let mut r = UTensor::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                r.add_term((concat(a1, a2), concat(b1, b2)), &c1.mul(c2));
            }
        }
        r
    }

    fn unit() -> UTensor {
        let mut r = UTensor::default();
        r.add_term((vec![], vec![]), &ScalarExpr::one());
        r
    }
}

fn gen_coproduct(g: UGen) -> UTensor {
    let mut t = UTensor::default();
    let one = ScalarExpr::one();
    match g {
        UGen::E(i) => {
            t.add_term((vec![UGen::E(i)], vec![]), &one);
            t.add_term((vec![UGen::K(i)], vec![UGen::E(i)]), &one);
        }
        UGen::F(i) => {
            t.add_term((vec![UGen::F(i)], vec![UGen::Kinv(i)]), &one);
            t.add_term((vec![], vec![UGen::F(i)]), &one);
        }
        UGen::K(i) => t.add_term((vec![UGen::K(i)], vec![UGen::K(i)]), &one),
        UGen::Kinv(i) => t.add_term((vec![UGen::Kinv(i)], vec![UGen::Kinv(i)]), &one),
    }
    t
}

/// `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K^{-1} + 1⊗F`, `Δ(K) = K⊗K`, extended multiplicatively.
pub fn coproduct(w: &UWord) -> UTensor {
    let mut out = UTensor::default();
    for (word, c) in w.terms() {
        let mut acc = UTensor::unit();
        for &g in word {
            acc = acc.mul(&gen_coproduct(g));
        }
        for (k, a) in acc.terms {
            out.add_term(k, &a.mul(c));
        }
    }
    out
}

/// Applies `f ⊗ g` and multiplies: `sum f(a) * g(b)`.
pub fn contract(t: &UTensor, f: impl Fn(&UWord) -> UWord, g: impl Fn(&UWord) -> UWord) -> UWord {
    let mut out = UWord::zero();
    for ((a, b), c) in &t.terms {
        let fa = f(&UWord::word(a.clone(), ScalarExpr::one()));
        let gb = g(&UWord::word(b.clone(), ScalarExpr::one()));
        out = out.add(&fa.mul(&gb).scale(c));
    }
    out
}

fn gen_antipode(g: UGen) -> UWord {
    match g {
        UGen::E(i) => UWord::word(vec![UGen::Kinv(i), UGen::E(i)], ScalarExpr::int(-1)),
        UGen::F(i) => UWord::word(vec![UGen::F(i), UGen::K(i)], ScalarExpr::int(-1)),
        UGen::K(i) => UWord::kinv(i),
        UGen::Kinv(i) => UWord::k(i),
    }
}

/// Antipode, anti-multiplicative.
pub fn antipode(w: &UWord) -> UWord {
    let mut out = UWord::zero();
    for (word, c) in w.terms() {
        let mut acc = UWord::one();
        for &g in word.iter().rev() {
            acc = acc.mul(&gen_antipode(g));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Counit: `ε(E) = ε(F) = 0`, `ε(K) = 1`.
pub fn counit(w: &UWord) -> ScalarExpr {
    let mut out = ScalarExpr::zero();
    for (word, c) in w.terms() {
        if word.iter().all(|g| matches!(g, UGen::K(_) | UGen::Kinv(_))) {
            out = out.add(c);
        }
    }
    out
}

/// The involution of `U_q su_{n,n}`; index `n` is the non-compact root.
/// Anti-multiplicative and conjugate-linear (the variables count as real).
pub fn star(w: &UWord, n: usize) -> UWord {
    let gen_star = |g: UGen| -> UWord {
        match g {
            UGen::E(i) if i == n => UWord::word(vec![UGen::K(i), UGen::F(i)], ScalarExpr::int(-1)),
            UGen::F(i) if i == n => UWord::word(vec![UGen::E(i), UGen::Kinv(i)], ScalarExpr::int(-1)),
            UGen::E(i) => UWord::word(vec![UGen::K(i), UGen::F(i)], ScalarExpr::one()),
            UGen::F(i) => UWord::word(vec![UGen::E(i), UGen::Kinv(i)], ScalarExpr::one()),
            k => UWord::gen(k),
        }
    };
    let mut out = UWord::zero();
    for (word, c) in w.terms() {
        let mut acc = UWord::one();
        for &g in word.iter().rev() {
            acc = acc.mul(&gen_star(g));
        }
        out = out.add(&acc.scale(&c.conj()));
    }
    out
}

/// `ad_g(b)` for a single generator, in closed form.
pub fn ad_gen(g: UGen, b: &UWord) -> UWord {
    match g {
        UGen::E(i) => {
            // -K^{-1} E b + K^{-1} b E
            let ki = UWord::kinv(i);
            let e = UWord::e(i);
            ki.mul(&b.mul(&e)).sub(&ki.mul(&e).mul(b))
        }
        UGen::F(i) => {
            // -F K b K^{-1} + b F
            let f = UWord::f(i);
            b.mul(&f).sub(&f.mul(&UWord::k(i)).mul(b).mul(&UWord::kinv(i)))
        }
        UGen::K(i) => UWord::k(i).mul(b).mul(&UWord::kinv(i)),
        UGen::Kinv(i) => UWord::kinv(i).mul(b).mul(&UWord::k(i)),
    }
}

/// Adjoint action, composed letter by letter.
pub fn ad(a: &UWord, b: &UWord) -> UWord {
    let mut out = UWord::zero();
    for (word, c) in a.terms() {
        let mut acc = b.clone();
        for &g in word.iter().rev() {
            acc = ad_gen(g, &acc);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `ad` through the Hopf structure: `sum S(a') b a''` with `Δ(a) = sum a' ⊗ a''`.
pub fn ad_via_coproduct(a: &UWord, b: &UWord) -> UWord {
    contract(&coproduct(a), |x| antipode(x).mul(b), |y| y.clone())
}

/// `ad_{g_1} ad_{g_2} ... ad_{g_k}(b)` for a list of generators.
pub fn ad_chain(gens: &[UGen], b: &UWord) -> UWord {
    let mut acc = b.clone();
    for &g in gens.iter().rev() {
        acc = ad_gen(g, &acc);
    }
    acc
}

/// `sum g' b S(g'')` for a single generator.
pub fn ad_left_gen(g: UGen, b: &UWord) -> UWord {
    match g {
        UGen::E(i) => {
            // E b - K b K^{-1} E
            let e = UWord::e(i);
            e.mul(b).sub(&UWord::k(i).mul(b).mul(&UWord::kinv(i)).mul(&e))
        }
        UGen::F(i) => {
            // (F b - b F) K
            let f = UWord::f(i);
            f.mul(b).sub(&b.mul(&f)).mul(&UWord::k(i))
        }
        UGen::K(i) => UWord::k(i).mul(b).mul(&UWord::kinv(i)),
        UGen::Kinv(i) => UWord::kinv(i).mul(b).mul(&UWord::k(i)),
    }
}

/// `sum a' b S(a'')`; unlike [`ad`] this is a homomorphism in `a`.
pub fn ad_left(a: &UWord, b: &UWord) -> UWord {
    let mut out = UWord::zero();
    for (word, c) in a.terms() {
        out = out.add(&ad_left_chain(word, b).scale(c));
    }
    out
}

pub fn ad_left_via_coproduct(a: &UWord, b: &UWord) -> UWord {
    contract(&coproduct(a), |x| x.mul(b), antipode)
}

pub fn ad_left_chain(gens: &[UGen], b: &UWord) -> UWord {
    let mut acc = b.clone();
    for &g in gens.iter().rev() {
        acc = ad_left_gen(g, &acc);
    }
    acc
}

/// `K_a K_{a+1} ... K_b` (empty when `a > b`).
pub fn k_range(a: usize, b: usize) -> UWord {
    UWord::word((a..=b).map(UGen::K).collect(), ScalarExpr::one())
}

/// `(q^c K_a...K_b - q^{-c} K_b^{-1}...K_a^{-1}) / (q - q^{-1})`, i.e. the
/// q-number `[H_a + ... + H_b + c]_q`, given `q^c`.
pub fn cartan_qbracket(a: usize, b: usize, q_c: &ScalarExpr) -> UWord {
    let inv = q_c.inv().expect("q^c is a unit");
    let plus = k_range(a, b).scale(q_c);
    let minus = UWord::word((a..=b).rev().map(UGen::Kinv).collect(), inv);
    let d = q_minus_qinv().inv().expect("nonzero");
    plus.sub(&minus).scale(&d)
}

/// Multiplies by an integer.
pub fn times(w: &UWord, k: i64) -> UWord {
    w.scale(&ScalarExpr::constant(Gauss::int(k)))
}

/// Cartan matrix entry of `sl_N`.
pub fn cartan(i: usize, j: usize) -> i32 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Defining relations of `U_q sl_{rank+1}`, each as an element that must act by zero.
pub fn defining_relations(rank: usize) -> Vec<(String, UWord)> {
    let mut out = Vec::new();
    let q = |e: i32| ScalarExpr::q_pow(e);
    for i in 1..=rank {
        for j in 1..=rank {
            let (ki, ej, fj) = (UWord::k(i), UWord::e(j), UWord::f(j));
            out.push((format!("K{i}K{j}=K{j}K{i}"), ki.mul(&UWord::k(j)).sub(&UWord::k(j).mul(&ki))));
            let a = cartan(i, j);
            out.push((format!("K{i}E{j}"), ki.mul(&ej).sub(&ej.mul(&ki).scale(&q(a)))));
            out.push((format!("K{i}F{j}"), ki.mul(&fj).sub(&fj.mul(&ki).scale(&q(-a)))));
            let mut comm = UWord::e(i).mul(&fj).sub(&fj.mul(&UWord::e(i)));
            if i == j {
                comm = comm.sub(&cartan_qbracket(i, i, &ScalarExpr::one()));
            }
            out.push((format!("[E{i},F{j}]"), comm));
            if i.abs_diff(j) == 1 {
                let two = q(1).add(&q(-1));
                for (name, x, y) in [("E", UWord::e(i), UWord::e(j)), ("F", UWord::f(i), UWord::f(j))] {
                    let rel = x
                        .mul(&x)
                        .mul(&y)
                        .sub(&x.mul(&y).mul(&x).scale(&two))
                        .add(&y.mul(&x).mul(&x));
                    out.push((format!("Serre {name}{i}{name}{i}{name}{j}"), rel));
                }
            }
            if i.abs_diff(j) > 1 && i < j {
                let (ei, fi) = (UWord::e(i), UWord::f(i));
                out.push((format!("E{i}E{j}"), ei.mul(&ej).sub(&ej.mul(&ei))));
                out.push((format!("F{i}F{j}"), fi.mul(&fj).sub(&fj.mul(&fi))));
            }
        }
    }
    out
}
