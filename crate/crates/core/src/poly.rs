//! Exact multivariate polynomials: arithmetic, Hasse derivatives, Taylor
//! jets, gradients, substitution, and the Hessian determinant.
//!
//! Terms are kept in a sorted map from exponent tuples to nonzero
//! coefficients, so printing and iteration order are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigUint, One};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldRef,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &FieldRef, vars: &Arc<Vec<String>>) -> Self {
        MultiPoly {
            field: Arc::clone(field),
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldRef, vars: &Arc<Vec<String>>, c: FieldElement) -> Self {
        let mut poly = Self::zero(field, vars);
        if !c.is_zero() {
            poly.terms.insert(vec![0; vars.len()], c);
        }
        poly
    }

    pub fn from_int(field: &FieldRef, vars: &Arc<Vec<String>>, n: i64) -> Self {
        Self::constant(field, vars, FieldElement::from_integer(field, n))
    }

    /// The monomial `vars[i]`.
    pub fn var(field: &FieldRef, vars: &Arc<Vec<String>>, i: usize) -> Self {
        let mut expo = vec![0; vars.len()];
        expo[i] = 1;
        let mut poly = Self::zero(field, vars);
        poly.terms.insert(expo, FieldElement::one(field));
        poly
    }

    pub fn monomial(
        field: &FieldRef,
        vars: &Arc<Vec<String>>,
        expo: Vec<u32>,
        coeff: FieldElement,
    ) -> Self {
        assert_eq!(expo.len(), vars.len());
        let mut poly = Self::zero(field, vars);
        if !coeff.is_zero() {
            poly.terms.insert(expo, coeff);
        }
        poly
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn coeff(&self, expo: &[u32]) -> FieldElement {
        self.terms
            .get(expo)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    fn insert_term(&mut self, expo: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.field == other.field && self.vars == other.vars,
            "polynomials over different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.field, &self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(expo, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.field, &self.vars, FieldElement::one(&self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = FieldElement::zero(&self.field);
        for (expo, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(expo) {
                if e > 0 {
                    term = term.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute a value for one variable, leaving a polynomial in the same
    /// variable list (the substituted variable no longer occurs).
    pub fn eval_partial(&self, var: usize, value: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (expo, coeff) in &self.terms {
            let e = expo[var];
            let mut new_expo = expo.clone();
            new_expo[var] = 0;
            let c = if e > 0 {
                coeff.mul(&value.pow(e as u64))
            } else {
                coeff.clone()
            };
            out.insert_term(new_expo, c);
        }
        out
    }

    /// Evaluate with polynomial arguments: `self(images[0], ..., images[k])`.
    /// All images must share one ring, which becomes the result's ring.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len());
        let target_field = images[0].field.clone();
        let target_vars = images[0].vars.clone();
        // cache powers of each image
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|_| {
                vec![MultiPoly::constant(
                    &target_field,
                    &target_vars,
                    FieldElement::one(&target_field),
                )]
            })
            .collect();
        let mut out = MultiPoly::zero(&target_field, &target_vars);
        for (expo, coeff) in &self.terms {
            let mut term = MultiPoly::constant(
                &target_field,
                &target_vars,
                coerce(coeff, &target_field),
            );
            for (i, &e) in expo.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Ordinary partial derivative.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (expo, coeff) in &self.terms {
            let e = expo[var];
            if e == 0 {
                continue;
            }
            let mut new_expo = expo.clone();
            new_expo[var] -= 1;
            let factor = FieldElement::from_integer(&self.field, e as i64);
            out.insert_term(new_expo, coeff.mul(&factor));
        }
        out
    }

    /// Gradient: first partials in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars.len()).map(|i| self.partial(i)).collect()
    }

    /// Hasse derivative of order `a` in the marked variable: each term
    /// `c * t^k` maps to `c * C(k, a) * t^(k-a)`, with the binomial computed
    /// over the integers and reduced into the field. Other variables are
    /// treated as constants.
    pub fn hasse_derivative(&self, var: usize, a: u32) -> Self {
        if a == 0 {
            return self.clone();
        }
        let mut out = Self::zero(&self.field, &self.vars);
        for (expo, coeff) in &self.terms {
            let k = expo[var];
            if k < a {
                continue;
            }
            let binom = binomial_bigint(k as u64, a as u64);
            let factor = FieldElement::from_bigint(&self.field, &binom);
            let mut new_expo = expo.clone();
            new_expo[var] = k - a;
            out.insert_term(new_expo, coeff.mul(&factor));
        }
        out
    }

    /// First `m` Hasse-Taylor coefficients of a univariate polynomial at a
    /// center: `(D^(0)f(c), ..., D^(m-1)f(c))`. All other variables must
    /// already be evaluated away.
    pub fn taylor_jets(&self, var: usize, center: &FieldElement, m: usize) -> Result<Vec<FieldElement>> {
        for expo in self.terms.keys() {
            if expo
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e > 0)
            {
                return Err(Error::NotUnivariate);
            }
        }
        let mut jets = Vec::with_capacity(m);
        for a in 0..m {
            let deriv = self.hasse_derivative(var, a as u32);
            jets.push(deriv.eval_univariate(var, center));
        }
        Ok(jets)
    }

    /// Evaluate a polynomial that only involves `var`.
    pub fn eval_univariate(&self, var: usize, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for (expo, coeff) in &self.terms {
            let e = expo[var];
            acc = acc.add(&coeff.mul(&x.pow(e as u64)));
        }
        acc
    }

    /// Determinant of the 3x3 matrix of second partials of a homogeneous
    /// ternary form.
    pub fn hessian(&self) -> Result<Self> {
        if self.vars.len() != 3 {
            return Err(Error::Parse("hessian requires exactly 3 variables".into()));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let h: Vec<Vec<MultiPoly>> = (0..3)
            .map(|i| (0..3).map(|j| self.partial(i).partial(j)).collect())
            .collect();
        let det = h[0][0].mul(&h[1][1].mul(&h[2][2]).sub(&h[1][2].mul(&h[2][1])))
            .sub(&h[0][1].mul(&h[1][0].mul(&h[2][2]).sub(&h[1][2].mul(&h[2][0]))))
            .add(&h[0][2].mul(&h[1][0].mul(&h[2][1]).sub(&h[1][1].mul(&h[2][0]))));
        Ok(det)
    }

    /// Extract coefficients with respect to one variable: index k holds the
    /// coefficient of `var^k` as a polynomial in the same ring.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.field, &self.vars); d + 1];
        for (expo, coeff) in &self.terms {
            let k = expo[var] as usize;
            let mut new_expo = expo.clone();
            new_expo[var] = 0;
            out[k].insert_term(new_expo, coeff.clone());
        }
        out
    }

    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, `None` otherwise. Lex leading-term division; since lex is a
    /// monomial order this terminates and succeeds exactly on multiples.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.check_compatible(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut quotient = Self::zero(&self.field, &self.vars);
        let mut rem = self.clone();
        let (lead_d, lc_d) = divisor.terms.iter().next_back().unwrap();
        while !rem.is_zero() {
            let (lead_r, lc_r) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (e.clone(), c.clone())
            };
            if lead_r.iter().zip(lead_d).any(|(r, d)| r < d) {
                return None;
            }
            let expo: Vec<u32> = lead_r.iter().zip(lead_d).map(|(r, d)| r - d).collect();
            let coeff = lc_r.div(lc_d).expect("nonzero leading coefficient");
            let term = Self::monomial(&self.field, &self.vars, expo, coeff);
            rem = rem.sub(&term.mul(divisor));
            quotient = quotient.add(&term);
        }
        Some(quotient)
    }

    /// Map coefficients into another field (prime into extension, integers
    /// into anything). Keeps the variable list.
    pub fn map_field(&self, target: &FieldRef) -> Self {
        let mut out = Self::zero(target, &self.vars);
        for (expo, coeff) in &self.terms {
            out.insert_term(expo.clone(), coerce(coeff, target));
        }
        out
    }

    /// Parse the polynomial grammar: variables `x0..xN`, integer
    /// coefficients, `^` for powers, optional `*`. Whitespace-insensitive.
    pub fn parse(field: &FieldRef, n_vars: usize, text: &str) -> Result<Self> {
        let vars: Arc<Vec<String>> =
            Arc::new((0..n_vars).map(|i| format!("x{}", i)).collect());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(field, &vars);
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        let mut sign = 1i64;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            pos = 1;
        }
        while pos < bytes.len() {
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &compact[start..pos];
            let (expo, coeff) = parse_term(field, n_vars, term)?;
            let signed = if sign == -1 { coeff.neg() } else { coeff };
            out.insert_term(expo, signed);
            if pos < bytes.len() {
                sign = if bytes[pos] == b'-' { -1 } else { 1 };
                pos += 1;
            }
        }
        Ok(out)
    }
}

fn parse_term(field: &FieldRef, n_vars: usize, term: &str) -> Result<(Vec<u32>, FieldElement)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut expo = vec![0u32; n_vars];
    let mut coeff = FieldElement::one(field);
    let mut rest = term;
    // leading integer coefficient
    let digits = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits > 0 {
        let n: BigInt = rest[..digits]
            .parse()
            .map_err(|_| Error::Parse(term.into()))?;
        coeff = FieldElement::from_bigint(field, &n);
        rest = &rest[digits..];
        rest = rest.strip_prefix('*').unwrap_or(rest);
    }
    while !rest.is_empty() {
        let r = rest
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(term.into()))?;
        let idx_len = r.bytes().take_while(|b| b.is_ascii_digit()).count();
        if idx_len == 0 {
            return Err(Error::Parse(term.into()));
        }
        let idx: usize = r[..idx_len]
            .parse()
            .map_err(|_| Error::Parse(term.into()))?;
        if idx >= n_vars {
            return Err(Error::Parse(format!(
                "variable x{} out of range (have {})",
                idx, n_vars
            )));
        }
        let mut r = &r[idx_len..];
        let mut power = 1u32;
        if let Some(stripped) = r.strip_prefix('^') {
            let p_len = stripped.bytes().take_while(|b| b.is_ascii_digit()).count();
            if p_len == 0 {
                return Err(Error::Parse(term.into()));
            }
            power = stripped[..p_len]
                .parse()
                .map_err(|_| Error::Parse(term.into()))?;
            r = &stripped[p_len..];
        }
        expo[idx] += power;
        rest = r.strip_prefix('*').unwrap_or(r);
    }
    Ok((expo, coeff))
}

/// Coerce an element into a target field. Prime-field residues lift into
/// extensions of the same characteristic as constants; anything else must
/// already live in the target field.
pub fn coerce(x: &FieldElement, target: &FieldRef) -> FieldElement {
    if x.field() == target {
        return x.clone();
    }
    assert!(
        x.field().is_prime_field()
            && target.is_finite()
            && x.field().characteristic() == target.characteristic(),
        "cannot coerce {} into {}",
        x.field().spec_string(),
        target.spec_string()
    );
    FieldElement::from_u64_coeffs(target, vec![x.residue()])
}

pub fn binomial_bigint(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    BigInt::from(num / den)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest exponent tuples first
        for (expo, coeff) in self.terms.iter().rev() {
            let coeff_str = coeff.to_string();
            let (sign, magnitude) = match coeff_str.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff_str),
            };
            let needs_parens = magnitude.contains('+') || magnitude.contains('-');
            let mut monomial = String::new();
            for (i, &e) in expo.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !monomial.is_empty() {
                    monomial.push('*');
                }
                monomial.push_str(&self.vars[i]);
                if e > 1 {
                    monomial.push_str(&format!("^{}", e));
                }
            }
            let body = if monomial.is_empty() {
                if needs_parens {
                    format!("({})", magnitude)
                } else {
                    magnitude
                }
            } else if magnitude == "1" {
                monomial
            } else if needs_parens {
                format!("({})*{}", magnitude, monomial)
            } else {
                format!("{}*{}", magnitude, monomial)
            };
            if first {
                if sign == "-" {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else {
                write!(f, " {} {}", sign, body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn q() -> FieldRef {
        FieldDescriptor::rational()
    }

    fn vars3() -> Arc<Vec<String>> {
        Arc::new(vec!["x0".into(), "x1".into(), "x2".into()])
    }

    #[test]
    fn parse_and_eval() {
        let f = q();
        let p = MultiPoly::parse(&f, 3, "x0^3 + x1^3 + x2^3").unwrap();
        assert_eq!(p.total_degree(), 3);
        assert!(p.is_homogeneous());
        let v = p.eval(&[
            FieldElement::from_integer(&f, 1),
            FieldElement::from_integer(&f, 2),
            FieldElement::from_integer(&f, 3),
        ]);
        assert_eq!(v, FieldElement::from_integer(&f, 36));
    }

    #[test]
    fn parse_optional_star_and_whitespace() {
        let f = q();
        let a = MultiPoly::parse(&f, 2, "3x0^2*x1 - x1 + 7").unwrap();
        let b = MultiPoly::parse(&f, 2, "3*x0^2x1-x1+7").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hasse_derivative_examples() {
        let f = q();
        let vars = Arc::new(vec!["t".to_string()]);
        let t5 = MultiPoly::monomial(&f, &vars, vec![5], FieldElement::one(&f));
        let d2 = t5.hasse_derivative(0, 2);
        let expected = MultiPoly::monomial(&f, &vars, vec![3], FieldElement::from_integer(&f, 10));
        assert_eq!(d2, expected);

        let f5 = FieldDescriptor::prime(5).unwrap();
        let t5 = MultiPoly::monomial(&f5, &vars, vec![5], FieldElement::one(&f5));
        let d5 = t5.hasse_derivative(0, 5);
        assert_eq!(
            d5,
            MultiPoly::constant(&f5, &vars, FieldElement::one(&f5))
        );
        // the 5th ordinary derivative is zero in characteristic 5
        let mut ord = t5.clone();
        for _ in 0..5 {
            ord = ord.partial(0);
        }
        assert!(ord.is_zero());
    }

    #[test]
    fn first_hasse_derivative_is_ordinary() {
        let f = q();
        let vars = Arc::new(vec!["t".to_string()]);
        for n in 1..=20u32 {
            let tn = MultiPoly::monomial(&f, &vars, vec![n], FieldElement::one(&f));
            assert_eq!(tn.hasse_derivative(0, 1), tn.partial(0));
        }
    }

    #[test]
    fn taylor_jets_binomial() {
        let f = q();
        let vars = Arc::new(vec!["t".to_string()]);
        let t = MultiPoly::var(&f, &vars, 0);
        let one = MultiPoly::from_int(&f, &vars, 1);
        let p = t.add(&one).pow(2);
        let jets = p
            .taylor_jets(0, &FieldElement::zero(&f), 3)
            .unwrap();
        let expect: Vec<FieldElement> = [1, 2, 1]
            .iter()
            .map(|&n| FieldElement::from_integer(&f, n))
            .collect();
        assert_eq!(jets, expect);
    }

    #[test]
    fn taylor_jets_char_p_frobenius_case() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let vars = Arc::new(vec!["t".to_string()]);
        let t7 = MultiPoly::monomial(&f7, &vars, vec![7], FieldElement::one(&f7));
        let jets = t7
            .taylor_jets(0, &FieldElement::one(&f7), 8)
            .unwrap();
        let expect: Vec<u64> = vec![1, 0, 0, 0, 0, 0, 0, 1];
        let got: Vec<u64> = jets.iter().map(|x| x.residue()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn gradient_examples() {
        let f = q();
        let p = MultiPoly::parse(&f, 2, "x0^2+x1^2").unwrap();
        let g = p.gradient();
        assert_eq!(g[0], MultiPoly::parse(&f, 2, "2x0").unwrap());
        assert_eq!(g[1], MultiPoly::parse(&f, 2, "2x1").unwrap());
        let c = MultiPoly::from_int(&f, &Arc::new(vec!["x0".into()]), 5);
        assert!(c.gradient()[0].is_zero());
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let g = fermat.gradient();
        assert_eq!(g[0], MultiPoly::parse(&f, 3, "3x0^2").unwrap());
        assert_eq!(g[2], MultiPoly::parse(&f, 3, "3x2^2").unwrap());
    }

    #[test]
    fn hessian_examples() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let fermat = MultiPoly::parse(&f7, 3, "x0^3+x1^3+x2^3").unwrap();
        let h = fermat.hessian().unwrap();
        // 216 xyz = 6 xyz over F_7
        assert_eq!(h, MultiPoly::parse(&f7, 3, "6x0x1x2").unwrap());

        let f = q();
        let quartic = MultiPoly::parse(&f, 3, "x0^4+x1^4+x2^4").unwrap();
        let h = quartic.hessian().unwrap();
        assert_eq!(h, MultiPoly::parse(&f, 3, "1728x0^2x1^2x2^2").unwrap());

        let conic = MultiPoly::parse(&f, 3, "x0^2+x1^2+x2^2").unwrap();
        let h = conic.hessian().unwrap();
        assert_eq!(h, MultiPoly::from_int(&f, &vars3(), 8));

        let bad = MultiPoly::parse(&f, 3, "x0^2+x1").unwrap();
        assert_eq!(bad.hessian(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn compose_substitution() {
        let f = q();
        let p = MultiPoly::parse(&f, 2, "x0^2+x1").unwrap();
        let uvars = Arc::new(vec!["u".to_string()]);
        let u = MultiPoly::var(&f, &uvars, 0);
        let u_plus_1 = u.add(&MultiPoly::from_int(&f, &uvars, 1));
        let composed = p.compose(&[u.clone(), u_plus_1]);
        // u^2 + u + 1
        let expect = u.pow(2).add(&u).add(&MultiPoly::from_int(&f, &uvars, 1));
        assert_eq!(composed, expect);
    }

    #[test]
    fn display_roundtrip() {
        let f = q();
        let p = MultiPoly::parse(&f, 3, "2x0^2x1 - x2 + 3").unwrap();
        let printed = p.to_string();
        let reparsed = MultiPoly::parse(&f, 3, &printed).unwrap();
        assert_eq!(p, reparsed);
    }
}
