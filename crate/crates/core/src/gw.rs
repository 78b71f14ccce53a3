//! Arithmetic in the Grothendieck-Witt ring GW(k): diagonal forms, the
//! hyperbolic form, trace forms along finite extensions, classification
//! invariants, and an exact equality decision.
//!
//! A class is stored as a formal difference of diagonal forms. Equality is
//! decided through complete invariant sets: (rank, discriminant) over finite
//! fields of odd characteristic, and (rank, signature, discriminant, Hasse
//! symbols) over the rationals, applied to the pair of honest forms
//! `pos(a) + neg(b)` vs `pos(b) + neg(a)` (Witt cancellation makes this
//! equivalent to equality of the virtual classes).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigUint, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, FieldRef, SquareClass};
use crate::resultant::{mat_mul, mat_transpose};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWClass {
    field: FieldRef,
    pos: Vec<FieldElement>,
    neg: Vec<FieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWInvariants {
    /// Net rank `|pos| - |neg|`.
    pub rank: i64,
    /// Product of all diagonal entries modulo squares.
    pub disc: SquareClass,
    /// Rational base only: positive entries minus negative entries by sign.
    pub signature: Option<i64>,
    /// Rational base only: Hasse symbols at 2 and the odd primes dividing the
    /// entries, computed on the stabilized form `pos + (-1)*neg`.
    pub hasse_symbols: Option<BTreeMap<BigInt, i8>>,
}

impl GWClass {
    /// The zero class.
    pub fn zero(field: &FieldRef) -> Self {
        GWClass {
            field: field.clone(),
            pos: Vec::new(),
            neg: Vec::new(),
        }
    }

    /// The diagonal form `<a_1> + ... + <a_n>`.
    pub fn diag(field: &FieldRef, entries: Vec<FieldElement>) -> Result<Self> {
        for e in &entries {
            if e.field() != field {
                return Err(Error::MismatchedFields);
            }
            if e.is_zero() {
                return Err(Error::ZeroEntry("diagonal form entry"));
            }
        }
        let mut c = GWClass {
            field: field.clone(),
            pos: entries,
            neg: Vec::new(),
        };
        c.reduce();
        Ok(c)
    }

    /// The rank-1 form `<a>`.
    pub fn rank_one(a: &FieldElement) -> Result<Self> {
        Self::diag(&a.field().clone(), vec![a.clone()])
    }

    /// n copies of the hyperbolic form `<1> + <-1>`.
    pub fn hyperbolic(field: &FieldRef, n: usize) -> Self {
        let one = FieldElement::one(field);
        let minus_one = one.neg();
        let mut pos = Vec::with_capacity(2 * n);
        for _ in 0..n {
            pos.push(one.clone());
            pos.push(minus_one.clone());
        }
        GWClass {
            field: field.clone(),
            pos,
            neg: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn positive_part(&self) -> &[FieldElement] {
        &self.pos
    }

    pub fn negative_part(&self) -> &[FieldElement] {
        &self.neg
    }

    pub fn rank(&self) -> i64 {
        self.pos.len() as i64 - self.neg.len() as i64
    }

    /// Cancel pairs `<a>` occurring on both sides of the difference with the
    /// same square class.
    fn reduce(&mut self) {
        let mut i = 0;
        while i < self.pos.len() {
            let class_i = self.pos[i].square_class().expect("nonzero entry");
            let mut cancelled = false;
            for j in 0..self.neg.len() {
                let class_j = self.neg[j].square_class().expect("nonzero entry");
                if class_i == class_j {
                    self.pos.remove(i);
                    self.neg.remove(j);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled {
                i += 1;
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MismatchedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = GWClass {
            field: self.field.clone(),
            pos: [self.pos.clone(), other.pos.clone()].concat(),
            neg: [self.neg.clone(), other.neg.clone()].concat(),
        };
        out.reduce();
        Ok(out)
    }

    pub fn neg_class(&self) -> Self {
        GWClass {
            field: self.field.clone(),
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg_class())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for a in &self.pos {
            for b in &other.pos {
                pos.push(a.mul(b));
            }
            for b in &other.neg {
                neg.push(a.mul(b));
            }
        }
        for a in &self.neg {
            for b in &other.pos {
                neg.push(a.mul(b));
            }
            for b in &other.neg {
                pos.push(a.mul(b));
            }
        }
        let mut out = GWClass {
            field: self.field.clone(),
            pos,
            neg,
        };
        out.reduce();
        Ok(out)
    }

    /// Classification invariants of this class.
    pub fn invariants(&self) -> GWInvariants {
        let rank = self.rank();
        let disc = self.disc();
        let (signature, hasse_symbols) = if self.field.kind() == FieldKind::Rational {
            let sig_pos: i64 = self
                .pos
                .iter()
                .map(|a| if a.rational_value().is_positive() { 1 } else { -1 })
                .sum();
            let sig_neg: i64 = self
                .neg
                .iter()
                .map(|a| if a.rational_value().is_positive() { 1 } else { -1 })
                .sum();
            let stabilized: Vec<FieldElement> = self
                .pos
                .iter()
                .cloned()
                .chain(self.neg.iter().map(|a| a.neg()))
                .collect();
            (Some(sig_pos - sig_neg), Some(hasse_symbol_table(&stabilized)))
        } else {
            (None, None)
        };
        GWInvariants {
            rank,
            disc,
            signature,
            hasse_symbols,
        }
    }

    /// Product of all entries modulo squares (a group homomorphism on GW).
    pub fn disc(&self) -> SquareClass {
        let trivial = match self.field.kind() {
            FieldKind::Rational => SquareClass::Squarefree(BigInt::one()),
            _ => SquareClass::Sign(1),
        };
        self.pos
            .iter()
            .chain(self.neg.iter())
            .map(|a| a.square_class().expect("nonzero entry"))
            .fold(trivial, |acc, c| acc.mul(&c))
    }

    /// Exact equality in GW(k), decided through complete invariants of the
    /// paired honest forms.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check_field(other)?;
        let left: Vec<FieldElement> = self
            .pos
            .iter()
            .chain(other.neg.iter())
            .cloned()
            .collect();
        let right: Vec<FieldElement> = other
            .pos
            .iter()
            .chain(self.neg.iter())
            .cloned()
            .collect();
        if left.len() != right.len() {
            return Ok(false);
        }
        Ok(forms_isometric(&self.field, &left, &right))
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pos.is_empty() && self.neg.is_empty() {
            return write!(f, "0");
        }
        let pos: Vec<String> = self.pos.iter().map(|a| format!("<{}>", a)).collect();
        write!(f, "{}", pos.join(" + "))?;
        for a in &self.neg {
            write!(f, " - <{}>", a)?;
        }
        Ok(())
    }
}

/// Isometry test for honest diagonal forms of equal rank.
fn forms_isometric(field: &FieldRef, a: &[FieldElement], b: &[FieldElement]) -> bool {
    let disc = |entries: &[FieldElement]| -> SquareClass {
        let trivial = match field.kind() {
            FieldKind::Rational => SquareClass::Squarefree(BigInt::one()),
            _ => SquareClass::Sign(1),
        };
        entries
            .iter()
            .map(|x| x.square_class().expect("nonzero"))
            .fold(trivial, |acc, c| acc.mul(&c))
    };
    if disc(a) != disc(b) {
        return false;
    }
    if field.kind() != FieldKind::Rational {
        // (rank, disc) is complete over finite fields of odd characteristic
        return true;
    }
    let sig = |entries: &[FieldElement]| -> i64 {
        entries
            .iter()
            .map(|x| if x.rational_value().is_positive() { 1 } else { -1 })
            .sum()
    };
    if sig(a) != sig(b) {
        return false;
    }
    let ha = hasse_symbol_table(a);
    let hb = hasse_symbol_table(b);
    let mut primes: std::collections::BTreeSet<BigInt> = ha.keys().cloned().collect();
    primes.extend(hb.keys().cloned());
    for p in primes {
        let sa = ha.get(&p).copied().unwrap_or(1);
        let sb = hb.get(&p).copied().unwrap_or(1);
        if sa != sb {
            return false;
        }
    }
    true
}

/// Hasse symbols of a diagonal rational form at 2 and at every odd prime
/// dividing an entry: `eps_p = prod_{i<j} (a_i, a_j)_p`.
fn hasse_symbol_table(entries: &[FieldElement]) -> BTreeMap<BigInt, i8> {
    let squarefree: Vec<BigInt> = entries
        .iter()
        .map(|a| match a.square_class().expect("nonzero") {
            SquareClass::Squarefree(n) => n,
            SquareClass::Sign(_) => unreachable!("rational entries expected"),
        })
        .collect();
    let mut primes: std::collections::BTreeSet<BigInt> = std::collections::BTreeSet::new();
    primes.insert(BigInt::from(2));
    for n in &squarefree {
        let mut m = n.abs();
        let mut d = BigInt::from(3);
        while &d * &d <= m {
            if (&m % &d).is_zero() {
                primes.insert(d.clone());
                while (&m % &d).is_zero() {
                    m /= &d;
                }
            }
            d += 2;
        }
        if m > BigInt::one() && m.is_odd() {
            primes.insert(m);
        }
    }
    let mut table = BTreeMap::new();
    for p in primes {
        let mut eps = 1i8;
        for i in 0..squarefree.len() {
            for j in i + 1..squarefree.len() {
                eps *= hilbert_symbol(&squarefree[i], &squarefree[j], &p);
            }
        }
        table.insert(p, eps);
    }
    table
}

/// Hilbert symbol (a, b)_p for nonzero integers at a finite prime, by the
/// standard case formulas.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigInt) -> i8 {
    assert!(!a.is_zero() && !b.is_zero());
    let (alpha, u) = p_adic_split(a, p);
    let (beta, v) = p_adic_split(b, p);
    if *p == BigInt::from(2) {
        let eps = |n: &BigInt| -> u8 {
            // (n-1)/2 mod 2 for odd n: 1 iff n = 3 mod 4
            if n.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
                1
            } else {
                0
            }
        };
        let omega = |n: &BigInt| -> u8 {
            // (n^2-1)/8 mod 2 for odd n: 1 iff n = 3, 5 mod 8
            let r = n.mod_floor(&BigInt::from(8));
            if r == BigInt::from(3) || r == BigInt::from(5) {
                1
            } else {
                0
            }
        };
        let exp = eps(&u) * eps(&v) + (alpha % 2) as u8 * omega(&v) + (beta % 2) as u8 * omega(&u);
        if exp % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let eps_p = ((p - BigInt::one()) / BigInt::from(2)).is_odd(); // -1 is a nonsquare mod p
        let mut sign = 1i8;
        if (alpha * beta) % 2 == 1 && eps_p {
            sign = -sign;
        }
        if beta % 2 == 1 {
            sign *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            sign *= legendre(&v, p);
        }
        sign
    }
}

/// Hilbert symbol at the real place: -1 iff both arguments are negative.
pub fn hilbert_symbol_real(a: &BigInt, b: &BigInt) -> i8 {
    if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    }
}

fn p_adic_split(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut alpha = 0u64;
    let mut u = n.clone();
    while (&u % p).is_zero() {
        u /= p;
        alpha += 1;
    }
    (alpha, u)
}

fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let exp: BigUint = ((p - BigInt::one()) / BigInt::from(2))
        .to_biguint()
        .unwrap();
    let a_mod = a.mod_floor(p).to_biguint().unwrap();
    let r = a_mod.modpow(&exp, &p.to_biguint().unwrap());
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Symmetric congruence diagonalization: returns `(d, s)` with
/// `diag(d) = s^T g s` and `s` invertible. Valid in characteristic != 2.
pub fn diagonalize_congruence(
    g: &[Vec<FieldElement>],
) -> (Vec<FieldElement>, Vec<Vec<FieldElement>>) {
    let n = g.len();
    let field = g[0][0].field().clone();
    let mut m: Vec<Vec<FieldElement>> = g.to_vec();
    let mut s: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        FieldElement::one(&field)
                    } else {
                        FieldElement::zero(&field)
                    }
                })
                .collect()
        })
        .collect();

    // congruence by an elementary column operation col_i += c * col_j,
    // applied symmetrically, with the same operation recorded on s
    let apply = |m: &mut Vec<Vec<FieldElement>>,
                 s: &mut Vec<Vec<FieldElement>>,
                 i: usize,
                 j: usize,
                 c: &FieldElement| {
        for row in 0..m.len() {
            let add = m[row][j].mul(c);
            m[row][i] = m[row][i].add(&add);
        }
        for col in 0..m.len() {
            let add = m[j][col].mul(c);
            m[i][col] = m[i][col].add(&add);
        }
        for row in 0..s.len() {
            let add = s[row][j].mul(c);
            s[row][i] = s[row][i].add(&add);
        }
    };
    let swap = |m: &mut Vec<Vec<FieldElement>>, s: &mut Vec<Vec<FieldElement>>, i: usize, j: usize| {
        for row in 0..m.len() {
            m[row].swap(i, j);
        }
        m.swap(i, j);
        for row in 0..s.len() {
            s[row].swap(i, j);
        }
    };

    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                swap(&mut m, &mut s, k, i);
            } else {
                // all remaining diagonal entries vanish; bring in an
                // off-diagonal entry via e_i -> e_i + e_j (char != 2)
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match found {
                    None => break, // remaining block is zero
                    Some((i, j)) => {
                        let one = FieldElement::one(&field);
                        apply(&mut m, &mut s, i, j, &one);
                        if i != k {
                            swap(&mut m, &mut s, k, i);
                        }
                    }
                }
            }
        }
        let pivot = m[k][k].clone();
        if pivot.is_zero() {
            continue;
        }
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if m[k][i].is_zero() {
                continue;
            }
            let c = m[k][i].mul(&inv).neg();
            apply(&mut m, &mut s, i, k, &c);
        }
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (d, s)
}

/// The trace form of a finite extension: the rank-e form over the prime base
/// field with Gram matrix `G_ij = Tr(a * b_i * b_j)` on the power basis,
/// diagonalized by symmetric congruence. The congruence certificate
/// `D = S^T G S` is verified by exact multiplication before returning.
pub fn trace_form(a: &FieldElement) -> Result<GWClass> {
    if a.is_zero() {
        return Err(Error::ZeroEntry("trace form scaling element"));
    }
    let field = a.field().clone();
    if field.kind() == FieldKind::Rational {
        return GWClass::rank_one(a);
    }
    let e = field.extension_degree();
    let base = field.base_prime();
    if e == 1 {
        return GWClass::diag(&base, vec![FieldElement::from_u64_coeffs(&base, vec![a.residue()])]);
    }
    let alpha = FieldElement::generator(&field)?;
    // powers alpha^0 .. alpha^(2e-2)
    let mut powers = Vec::with_capacity(2 * e - 1);
    let mut acc = FieldElement::one(&field);
    for _ in 0..2 * e - 1 {
        powers.push(acc.clone());
        acc = acc.mul(&alpha);
    }
    let gram: Vec<Vec<FieldElement>> = (0..e)
        .map(|i| {
            (0..e)
                .map(|j| a.mul(&powers[i + j]).trace_to_base().expect("finite"))
                .collect()
        })
        .collect();
    let (d, s) = diagonalize_congruence(&gram);
    // exact certificate check
    let st = mat_transpose(&s);
    let prod = mat_mul(&mat_mul(&st, &gram), &s);
    for i in 0..e {
        for j in 0..e {
            let expect = if i == j {
                d[i].clone()
            } else {
                FieldElement::zero(&base)
            };
            if prod[i][j] != expect {
                return Err(Error::Internal(
                    "congruence certificate S^T G S = D failed".into(),
                ));
            }
        }
    }
    if d.iter().any(|x| x.is_zero()) {
        return Err(Error::Internal(
            "degenerate trace form (zero diagonal entry)".into(),
        ));
    }
    GWClass::diag(&base, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn f7() -> FieldRef {
        FieldDescriptor::prime(7).unwrap()
    }

    fn elem(f: &FieldRef, n: i64) -> FieldElement {
        FieldElement::from_integer(f, n)
    }

    #[test]
    fn one_plus_minus_one_is_hyperbolic() {
        let f = f7();
        let h = GWClass::diag(&f, vec![elem(&f, 1), elem(&f, -1)]).unwrap();
        let inv = h.invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.disc, SquareClass::Sign(-1));
        assert!(h.equal(&GWClass::hyperbolic(&f, 1)).unwrap());
    }

    #[test]
    fn three_times_hyperbolic_is_hyperbolic_over_q() {
        let q = FieldDescriptor::rational();
        let three = GWClass::rank_one(&elem(&q, 3)).unwrap();
        let h = GWClass::hyperbolic(&q, 1);
        let prod = three.mul(&h).unwrap();
        assert!(prod.equal(&h).unwrap());
    }

    #[test]
    fn squares_multiply_to_one() {
        let f = f7();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = elem(&f, rng.gen_range(1..7));
            let c = GWClass::rank_one(&a).unwrap();
            let sq = c.mul(&c).unwrap();
            let one = GWClass::rank_one(&elem(&f, 1)).unwrap();
            assert!(sq.equal(&one).unwrap());
        }
    }

    #[test]
    fn hyperbolic_absorbs_units() {
        for field in [f7(), FieldDescriptor::rational()] {
            let h = GWClass::hyperbolic(&field, 1);
            let range: Vec<i64> = if field.is_finite() {
                (1..7).collect()
            } else {
                vec![2, 3, 5, -1, -6, 30]
            };
            for u in range {
                let c = GWClass::rank_one(&elem(&field, u)).unwrap();
                assert!(c.mul(&h).unwrap().equal(&h).unwrap(), "u = {}", u);
            }
        }
    }

    #[test]
    fn a_plus_minus_a_is_hyperbolic() {
        for field in [f7(), FieldDescriptor::rational()] {
            let h = GWClass::hyperbolic(&field, 1);
            for a in [1i64, 2, 3, 5, 6, -4] {
                if field.is_finite() && a < 0 {
                    continue;
                }
                let c = GWClass::diag(&field, vec![elem(&field, a), elem(&field, -a)]).unwrap();
                assert!(c.equal(&h).unwrap(), "a = {}", a);
            }
        }
    }

    #[test]
    fn trace_form_f9_over_f3_is_hyperbolic() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f9 = FieldDescriptor::extension(&f3, 2).unwrap();
        let one = FieldElement::one(&f9);
        let t = trace_form(&one).unwrap();
        // Gram diag(2, 1): disc = 2 = -1 mod 3, a nonsquare
        let inv = t.invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.disc, SquareClass::Sign(-1));
        assert!(t.equal(&GWClass::hyperbolic(&f3, 1)).unwrap());
    }

    #[test]
    fn trace_form_trivial_extension() {
        let f = f7();
        let a = elem(&f, 5);
        let t = trace_form(&a).unwrap();
        assert!(t.equal(&GWClass::rank_one(&a).unwrap()).unwrap());
    }

    #[test]
    fn trace_form_square_class_invariance() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let f25 = FieldDescriptor::extension(&f5, 2).unwrap();
        let alpha = FieldElement::generator(&f25).unwrap();
        let a = alpha.add(&FieldElement::from_integer(&f25, 2));
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..10 {
            let digits: Vec<u64> = (0..2).map(|_| rng.gen_range(0..5)).collect();
            let s = FieldElement::from_u64_coeffs(&f25, digits);
            if s.is_zero() {
                continue;
            }
            let scaled = a.mul(&s).mul(&s);
            assert!(trace_form(&scaled)
                .unwrap()
                .equal(&trace_form(&a).unwrap())
                .unwrap());
        }
    }

    #[test]
    fn invariants_examples() {
        let f13 = FieldDescriptor::prime(13).unwrap();
        let h12 = GWClass::hyperbolic(&f13, 12);
        let inv = h12.invariants();
        assert_eq!(inv.rank, 24);
        assert_eq!(inv.disc, SquareClass::Sign(1)); // (-1)^12

        let q = FieldDescriptor::rational();
        let c = GWClass::diag(&q, vec![elem(&q, 1), elem(&q, 1), elem(&q, 1)]).unwrap();
        let inv = c.invariants();
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.signature, Some(3));
        assert_eq!(inv.disc, SquareClass::Squarefree(BigInt::one()));
        assert!(inv.hasse_symbols.unwrap().values().all(|&s| s == 1));
    }

    #[test]
    fn gw_equal_examples() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let h = GWClass::hyperbolic(&f3, 1);
        let a = GWClass::diag(&f3, vec![elem(&f3, 2), elem(&f3, 1)]).unwrap();
        assert!(a.equal(&h).unwrap());
        let b = GWClass::diag(&f3, vec![elem(&f3, 1), elem(&f3, 1)]).unwrap();
        assert!(!b.equal(&h).unwrap());

        // -1 is a square mod 5, so <1,1> = H there
        let f5 = FieldDescriptor::prime(5).unwrap();
        let b5 = GWClass::diag(&f5, vec![elem(&f5, 1), elem(&f5, 1)]).unwrap();
        assert!(b5.equal(&GWClass::hyperbolic(&f5, 1)).unwrap());
    }

    #[test]
    fn hasse_minkowski_distinguishes_over_q() {
        let q = FieldDescriptor::rational();
        // <1,1> vs <2,2>: same rank, disc, signature; equal by Hasse-Minkowski
        let a = GWClass::diag(&q, vec![elem(&q, 1), elem(&q, 1)]).unwrap();
        let b = GWClass::diag(&q, vec![elem(&q, 2), elem(&q, 2)]).unwrap();
        assert!(a.equal(&b).unwrap());
        // <1,1> vs <3,3>: Hasse symbol at 3 differs: (3,3)_3 = (-1,3)_3 = -1
        let c = GWClass::diag(&q, vec![elem(&q, 3), elem(&q, 3)]).unwrap();
        assert!(!a.equal(&c).unwrap());
    }

    #[test]
    fn ring_laws_on_sampled_triples() {
        let f = f7();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let sample = |rng: &mut ChaCha12Rng| {
            let n = rng.gen_range(1..4);
            let pos: Vec<FieldElement> =
                (0..n).map(|_| elem(&f, rng.gen_range(1..7))).collect();
            GWClass::diag(&f, pos).unwrap()
        };
        let one = GWClass::rank_one(&elem(&f, 1)).unwrap();
        for _ in 0..25 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let c = sample(&mut rng);
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            assert!(ab_c.equal(&a_bc).unwrap());
            assert!(a.mul(&b).unwrap().equal(&b.mul(&a).unwrap()).unwrap());
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert!(lhs.equal(&rhs).unwrap());
            assert!(a.mul(&one).unwrap().equal(&a).unwrap());
        }
    }

    #[test]
    fn trace_form_rank_equals_extension_degree() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        for e in [2usize, 3, 4] {
            let ext = FieldDescriptor::extension(&f7, e).unwrap();
            let alpha = FieldElement::generator(&ext).unwrap();
            let a = alpha.add(&FieldElement::from_integer(&ext, 3));
            let t = trace_form(&a).unwrap();
            assert_eq!(t.rank(), e as i64);
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = GWClass::hyperbolic(&f7(), 1);
        let b = GWClass::hyperbolic(&FieldDescriptor::prime(5).unwrap(), 1);
        assert_eq!(a.add(&b), Err(Error::MismatchedFields));
        assert_eq!(a.equal(&b), Err(Error::MismatchedFields));
    }

    #[test]
    fn zero_entries_rejected() {
        let f = f7();
        assert!(GWClass::diag(&f, vec![elem(&f, 0)]).is_err());
    }

    #[test]
    fn diagonalization_handles_zero_diagonal() {
        let f = f7();
        // hyperbolic Gram [[0,1],[1,0]]
        let g = vec![
            vec![elem(&f, 0), elem(&f, 1)],
            vec![elem(&f, 1), elem(&f, 0)],
        ];
        let (d, s) = diagonalize_congruence(&g);
        assert!(d.iter().all(|x| !x.is_zero()));
        let st = mat_transpose(&s);
        let prod = mat_mul(&mat_mul(&st, &g), &s);
        assert_eq!(prod[0][0], d[0]);
        assert_eq!(prod[1][1], d[1]);
        assert!(prod[0][1].is_zero() && prod[1][0].is_zero());
        // <d0, d1> should be the hyperbolic plane
        let c = GWClass::diag(&f, d).unwrap();
        assert!(c.equal(&GWClass::hyperbolic(&f, 1)).unwrap());
    }
}
