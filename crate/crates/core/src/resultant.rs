//! Resultants via the dense Sylvester matrix, with a fraction-free
//! Bareiss-style determinant over polynomial entries.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::MultiPoly;

/// Determinant of a square matrix of polynomials by fraction-free Bareiss
/// elimination. Every intermediate division is exact.
pub fn det_bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n));
    let field = m[0][0].field().clone();
    let vars = m[0][0].vars().clone();
    let one = MultiPoly::from_int(&field, &vars, 1);
    if n == 1 {
        return m[0][0].clone();
    }
    let mut sign_flip = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(&field, &vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            m[i][k] = MultiPoly::zero(&field, &vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of `f` and `g` with respect to one variable; entries are
/// polynomials in the remaining variables.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<Vec<Vec<MultiPoly>>> {
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    if df == 0 || dg == 0 {
        return Err(Error::DegreeZeroInVariable);
    }
    let field = f.field().clone();
    let vars = f.vars().clone();
    let fc = f.coeffs_in(var); // index k = coefficient of var^k
    let gc = g.coeffs_in(var);
    let n = df + dg;
    let zero = MultiPoly::zero(&field, &vars);
    let mut m = vec![vec![zero; n]; n];
    for i in 0..dg {
        for j in 0..=df {
            m[i][i + j] = fc[df - j].clone();
        }
    }
    for i in 0..df {
        for j in 0..=dg {
            m[dg + i][i + j] = gc[dg - j].clone();
        }
    }
    Ok(m)
}

/// Resultant of `f` and `g` with respect to the eliminated variable:
/// the determinant of their Sylvester matrix.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    Ok(det_bareiss(sylvester_matrix(f, g, var)?))
}

/// Determinant of a square matrix of field elements (Gaussian elimination;
/// division in a field is exact).
pub fn det_field(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n));
    let field = m[0][0].field().clone();
    let mut det = FieldElement::one(&field);
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !m[i][k].is_zero());
        let pivot_row = match pivot_row {
            Some(i) => i,
            None => return FieldElement::zero(&field),
        };
        if pivot_row != k {
            m.swap(k, pivot_row);
            det = det.neg();
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].mul(&inv);
            for j in k..n {
                let sub = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
        }
    }
    det
}

/// Product of two square matrices of field elements.
pub fn mat_mul(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = a.len();
    let field = a[0][0].field().clone();
    let mut out = vec![vec![FieldElement::zero(&field); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = FieldElement::zero(&field);
            for (k, b_row) in b.iter().enumerate() {
                acc = acc.add(&a[i][k].mul(&b_row[j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_transpose(a: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = a.len();
    (0..n).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, FieldElement};
    use crate::poly::MultiPoly;

    #[test]
    fn resultant_with_linear_factor_is_substitution() {
        let q = FieldDescriptor::rational();
        // Res_x(x^2 + y^2 - 1, x - y) = 2y^2 - 1
        let f = MultiPoly::parse(&q, 2, "x0^2 + x1^2 - 1").unwrap();
        let g = MultiPoly::parse(&q, 2, "x0 - x1").unwrap();
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, MultiPoly::parse(&q, 2, "2x1^2 - 1").unwrap());
    }

    #[test]
    fn resultant_over_f7() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let f = MultiPoly::parse(&f7, 2, "x0^2 - x1").unwrap();
        let g = MultiPoly::parse(&f7, 2, "x0 - 2").unwrap();
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, MultiPoly::parse(&f7, 2, "4 - x1").unwrap());
    }

    #[test]
    fn resultant_detects_common_factors() {
        let q = FieldDescriptor::rational();
        // share the factor (x0 - x1)
        let f = MultiPoly::parse(&q, 2, "x0^2 - x1^2").unwrap();
        let g = MultiPoly::parse(&q, 2, "x0^2 - 2x0x1 + x1^2").unwrap();
        assert!(resultant(&f, &g, 0).unwrap().is_zero());
        // coprime pair: nonzero
        let h = MultiPoly::parse(&q, 2, "x0 + x1 + 1").unwrap();
        assert!(!resultant(&f, &h, 0).unwrap().is_zero());
    }

    #[test]
    fn resultant_degree_bound() {
        let q = FieldDescriptor::rational();
        let f = MultiPoly::parse(&q, 2, "x0^3 + x1x0 + 2x1^2").unwrap();
        let g = MultiPoly::parse(&q, 2, "x0^2 + 3x1^3").unwrap();
        let r = resultant(&f, &g, 0).unwrap();
        let bound = f.degree_in(0) * g.total_degree() + g.degree_in(0) * f.total_degree();
        assert!(r.total_degree() <= bound);
    }

    #[test]
    fn degree_zero_rejected() {
        let q = FieldDescriptor::rational();
        let f = MultiPoly::parse(&q, 2, "x1^2 + 1").unwrap();
        let g = MultiPoly::parse(&q, 2, "x0 - x1").unwrap();
        assert!(resultant(&f, &g, 0).is_err());
    }

    #[test]
    fn field_determinant() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let e = |n: i64| FieldElement::from_integer(&f7, n);
        let m = vec![
            vec![e(1), e(2), e(3)],
            vec![e(0), e(4), e(5)],
            vec![e(1), e(0), e(6)],
        ];
        // det = 1*(24-0) - 2*(0-5) + 3*(0-4) = 24 + 10 - 12 = 22 = 1 mod 7
        assert_eq!(det_field(m), e(22));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let q = FieldDescriptor::rational();
        let p = |s: &str| MultiPoly::parse(&q, 2, s).unwrap();
        // zero in the (0,0) slot exercises the pivot swap
        let m = vec![
            vec![p("0"), p("x0"), p("x1 + 1")],
            vec![p("x0 - x1"), p("x1"), p("2")],
            vec![p("3x1"), p("x0x1"), p("x0 + 5")],
        ];
        let cof = |i: usize, j: usize| -> MultiPoly {
            let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            m[rows[0]][cols[0]]
                .mul(&m[rows[1]][cols[1]])
                .sub(&m[rows[0]][cols[1]].mul(&m[rows[1]][cols[0]]))
        };
        let expect = m[0][0]
            .mul(&cof(0, 0))
            .sub(&m[0][1].mul(&cof(0, 1)))
            .add(&m[0][2].mul(&cof(0, 2)));
        assert_eq!(det_bareiss(m.clone()), expect);
    }

    #[test]
    fn bareiss_zero_determinant_on_proportional_rows() {
        let q = FieldDescriptor::rational();
        let p = |s: &str| MultiPoly::parse(&q, 2, s).unwrap();
        let m = vec![
            vec![p("x0"), p("x1"), p("1")],
            vec![p("2x0"), p("2x1"), p("2")],
            vec![p("x1"), p("x0"), p("3")],
        ];
        assert!(det_bareiss(m).is_zero());
    }
}
