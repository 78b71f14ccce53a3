//! Univariate polynomial factorization over finite fields, closed points of
//! univariate polynomials, and canonical embeddings between extensions.
//!
//! Factorization runs squarefree reduction, distinct-degree factorization,
//! then Cantor-Zassenhaus equal-degree splitting. The splitting draws its
//! random elements from a generator seeded by a fixed constant plus the
//! polynomial's canonical hash, so factorizations are reproducible.

use std::fmt;

use num::{BigUint, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FieldRef};
use crate::poly::{coerce, MultiPoly};

const EDF_SEED: u64 = 0x7461_6e67_656e_6379;

/// Dense univariate polynomial over a field, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::new(field, vec![FieldElement::one(field)])
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::new(
            field,
            vec![FieldElement::zero(field), FieldElement::one(field)],
        )
    }

    pub fn constant(field: &FieldRef, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// Extract a univariate polynomial from a `MultiPoly` that only involves
    /// the marked variable.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Result<Self> {
        let field = p.field().clone();
        let mut coeffs = vec![FieldElement::zero(&field); p.degree_in(var) as usize + 1];
        for (expo, c) in p.terms() {
            if expo.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::NotUnivariate);
            }
            coeffs[expo[var] as usize] = c.clone();
        }
        Ok(Self::new(&field, coeffs))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::new(&self.field, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Self::new(&self.field, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out =
            vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        if rem.degree() < divisor.degree() || rem.is_zero() {
            return (Self::zero(&self.field), rem);
        }
        let lead_inv = divisor.leading().inv().unwrap();
        let mut quo = vec![FieldElement::zero(&self.field); rem.degree() - divisor.degree() + 1];
        while !rem.is_zero() && rem.degree() >= divisor.degree() {
            let shift = rem.degree() - divisor.degree();
            let c = rem.leading().mul(&lead_inv);
            quo[shift] = c.clone();
            let mut coeffs = rem.coeffs.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                coeffs[j + shift] = coeffs[j + shift].sub(&c.mul(b));
            }
            rem = Self::new(&self.field, coeffs);
        }
        (Self::new(&self.field, quo), rem)
    }

    pub fn rem(&self, m: &Self) -> Self {
        self.divmod(m).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&FieldElement::from_integer(&self.field, i as i64)));
        }
        Self::new(&self.field, out)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.rem(m);
        if e.is_zero() {
            return acc;
        }
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes (all exponents
    /// divisible by p); valid over a finite field, where Frobenius is onto.
    fn pth_root(&self) -> Self {
        let p = self.field.characteristic() as usize;
        let e = self.field.extension_degree() as u32;
        let q_over_p = BigUint::from(self.field.characteristic()).pow(e - 1);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.pow_big(&q_over_p));
            } else {
                debug_assert!(c.is_zero());
            }
        }
        Self::new(&self.field, out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c),
                1 => format!("({})*t", c),
                _ => format!("({})*t^{}", c, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Stable FNV-1a over the canonical form of a polynomial, used to seed
/// equal-degree splitting.
fn canonical_hash(f: &UniPoly) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    };
    eat(f.field.characteristic());
    eat(f.field.extension_degree() as u64);
    for c in &f.coeffs {
        if f.field.is_finite() {
            for &d in c.coeffs() {
                eat(d);
            }
        }
    }
    h
}

/// Irreducible monic factors with multiplicities; the unit is dropped.
pub fn irreducible_factors(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.field().is_finite() {
        return Err(Error::NotFinite);
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    factor_rec(&f.monic(), 1, &mut out);
    // merge duplicates, sort canonically by (degree, coefficient tuple order)
    out.sort_by(|(a, _), (b, _)| {
        a.degree().cmp(&b.degree()).then_with(|| {
            for i in (0..=a.degree()).rev() {
                let ord = a.coeff(i).canonical_cmp(&b.coeff(i));
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let mut merged: Vec<(UniPoly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

fn factor_rec(f: &UniPoly, mult: usize, out: &mut Vec<(UniPoly, usize)>) {
    if f.degree() == 0 {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root();
        factor_rec(&root, mult * f.field().characteristic() as usize, out);
        return;
    }
    let s = f.gcd(&df);
    let rad = f.divmod(&s).0.monic();
    for g in split_squarefree(&rad) {
        out.push((g, mult));
    }
    if s.degree() >= 1 {
        factor_rec(&s, mult, out);
    }
}

/// Factor a squarefree monic polynomial: distinct-degree factorization
/// followed by equal-degree splitting.
fn split_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut frob = UniPoly::x(&field); // x^(q^d) mod rest, maintained incrementally
    let mut d = 0usize;
    while rest.degree() >= 1 {
        d += 1;
        if rest.degree() < 2 * d {
            out.push(rest.monic());
            break;
        }
        frob = frob.powmod(&q, &rest);
        let diff = frob.sub(&UniPoly::x(&field));
        let g = rest.gcd(&diff);
        if g.degree() >= 1 {
            equal_degree_split(&g, d, &mut out);
            rest = rest.divmod(&g).0;
            frob = frob.rem(&rest);
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of one
/// known degree `d` (odd field order).
fn equal_degree_split(f: &UniPoly, d: usize, out: &mut Vec<UniPoly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let field = f.field().clone();
    let q = field.order().expect("finite field");
    let exponent = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut rng = ChaCha12Rng::seed_from_u64(EDF_SEED ^ canonical_hash(f));
    loop {
        let alpha = random_unipoly(&field, f.degree(), &mut rng);
        if alpha.degree() == 0 {
            continue;
        }
        let h = alpha.powmod(&exponent, f).sub(&UniPoly::one(&field));
        let g = f.gcd(&h);
        if g.degree() >= 1 && g.degree() < f.degree() {
            equal_degree_split(&g, d, out);
            equal_degree_split(&f.divmod(&g).0, d, out);
            return;
        }
    }
}

fn random_unipoly(field: &FieldRef, below_degree: usize, rng: &mut ChaCha12Rng) -> UniPoly {
    let p = field.characteristic();
    let e = field.extension_degree();
    let coeffs = (0..below_degree)
        .map(|_| {
            let digits: Vec<u64> = (0..e).map(|_| rng.gen_range(0..p)).collect();
            FieldElement::from_u64_coeffs(field, digits)
        })
        .collect();
    UniPoly::new(field, coeffs)
}

/// Roots of `f` that lie in its own coefficient field.
pub fn roots_in_field(f: &UniPoly) -> Result<Vec<FieldElement>> {
    let factors = irreducible_factors(f)?;
    let mut roots: Vec<FieldElement> = factors
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| g.coeff(0).neg())
        .collect();
    roots.sort_by(|a, b| a.canonical_cmp(b));
    Ok(roots)
}

/// Canonical embedding of a finite field element into a larger canonical
/// extension of the same prime field. The generator of the source field is
/// sent to the minimal root (in canonical element order) of the source
/// modulus inside the target field.
pub fn embed(x: &FieldElement, target: &FieldRef) -> Result<FieldElement> {
    if x.field() == target {
        return Ok(x.clone());
    }
    if x.field().is_prime_field() {
        return Ok(coerce(x, target));
    }
    if !target.is_finite() || x.field().characteristic() != target.characteristic() {
        return Err(Error::BadEmbedding);
    }
    let e = x.field().extension_degree();
    if target.extension_degree() % e != 0 {
        return Err(Error::BadEmbedding);
    }
    let rho = generator_image(x.field(), target)?;
    Ok(apply_embedding(x, &rho, target))
}

/// Image of the source generator under the canonical embedding.
pub fn generator_image(source: &FieldRef, target: &FieldRef) -> Result<FieldElement> {
    let modulus: Vec<FieldElement> = source
        .modulus()
        .iter()
        .map(|&c| FieldElement::from_u64_coeffs(target, vec![c]))
        .collect();
    let m = UniPoly::new(target, modulus);
    let roots = roots_in_field(&m)?;
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("modulus has no root in the target field".into()))
}

/// Map x through a fixed generator image (avoids re-deriving the root when
/// embedding many elements).
pub fn apply_embedding(x: &FieldElement, rho: &FieldElement, target: &FieldRef) -> FieldElement {
    let mut acc = FieldElement::zero(target);
    for &c in x.coeffs().iter().rev() {
        let c_t = FieldElement::from_u64_coeffs(target, vec![c]);
        acc = acc.mul(rho).add(&c_t);
    }
    acc
}

/// Embed every coefficient of a polynomial into a canonical extension,
/// deriving the generator image once.
pub fn poly_embed(p: &MultiPoly, target: &FieldRef) -> Result<MultiPoly> {
    if p.field() == target {
        return Ok(p.clone());
    }
    if p.field().is_prime_field() {
        return Ok(p.map_field(target));
    }
    let rho = generator_image(p.field(), target)?;
    let mut out = MultiPoly::zero(target, p.vars());
    for (expo, c) in p.terms() {
        let img = apply_embedding(c, &rho, target);
        out = out.add(&MultiPoly::monomial(target, p.vars(), expo.clone(), img));
    }
    Ok(out)
}

/// A Galois orbit of solutions, with its residue field degree over the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPoint {
    base: FieldRef,
    residue_degree: usize,
    coords: Vec<FieldElement>,
}

impl ClosedPoint {
    pub fn new(base: FieldRef, residue_degree: usize, coords: Vec<FieldElement>) -> Self {
        ClosedPoint {
            base,
            residue_degree,
            coords,
        }
    }

    pub fn base(&self) -> &FieldRef {
        &self.base
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// Representative coordinates over the residue field.
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn residue_field(&self) -> FieldRef {
        self.coords[0].field().clone()
    }

    /// The full Frobenius orbit of the representative (relative to the base
    /// field), of length `residue_degree`.
    pub fn orbit(&self) -> Vec<Vec<FieldElement>> {
        let q = self
            .base
            .order()
            .expect("closed points live over finite fields");
        let mut orbit = Vec::with_capacity(self.residue_degree);
        let mut current = self.coords.clone();
        for _ in 0..self.residue_degree {
            orbit.push(current.clone());
            current = current.iter().map(|c| c.pow_big(&q)).collect();
        }
        debug_assert_eq!(self.coords, current);
        orbit
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", strs.join(", "))
    }
}

/// Closed points of a nonzero univariate polynomial over a finite field.
/// Each irreducible factor of degree r contributes one point whose root lives
/// in the canonical extension, together with the factor's multiplicity.
pub fn closed_points_univariate(
    f: &MultiPoly,
    var: usize,
) -> Result<Vec<(ClosedPoint, usize)>> {
    let uni = UniPoly::from_multipoly(f, var)?;
    closed_points_of_unipoly(&uni)
}

pub fn closed_points_of_unipoly(f: &UniPoly) -> Result<Vec<(ClosedPoint, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = f.field().clone();
    if !base.is_finite() {
        return Err(Error::NotFinite);
    }
    let factors = irreducible_factors(f)?;
    let mut out = Vec::new();
    for (g, mult) in factors {
        let r = g.degree();
        if r == 0 {
            continue;
        }
        let root = if r == 1 {
            g.coeff(0).neg()
        } else {
            let total_degree = base.extension_degree() * r;
            let prime = base.base_prime();
            let target = FieldDescriptor::extension(&prime, total_degree)?;
            let rho = if base.is_prime_field() {
                None
            } else {
                Some(generator_image(&base, &target)?)
            };
            let lifted: Vec<FieldElement> = g
                .coeffs()
                .iter()
                .map(|c| match &rho {
                    None => coerce(c, &target),
                    Some(rho) => apply_embedding(c, rho, &target),
                })
                .collect();
            let g_lift = UniPoly::new(&target, lifted);
            let roots = roots_in_field(&g_lift)?;
            roots
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("irreducible factor has no root in its splitting field".into()))?
        };
        out.push((ClosedPoint::new(base.clone(), r, vec![root]), mult));
    }
    Ok(out)
}
