//! Closed points of the intersection of two plane curves over a prime
//! finite field, with intersection multiplicities.
//!
//! The intersection is computed by eliminating one coordinate with a
//! resultant, factoring the resulting binary form into closed points, and
//! back-substituting along each fiber. The projection frame must put the
//! center off both curves and separate the intersection points onto distinct
//! fibers; frames are tried in a deterministic order (identity, coordinate
//! swaps, then seeded random changes of coordinates).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::factor::{closed_points_of_unipoly, poly_embed, ClosedPoint, UniPoly};
use crate::field::{FieldElement, FieldRef};
use crate::poly::MultiPoly;
use crate::resultant::resultant;

const FRAME_SEED: u64 = 0x706c_616e_6531_3233;
const MAX_FRAMES: usize = 24;

/// A projective frame: an invertible 3x3 matrix over the base field. Systems
/// are pulled back through it, and solution points are pushed forward.
#[derive(Debug, Clone)]
pub struct Frame {
    mat: Vec<Vec<FieldElement>>,
}

impl Frame {
    fn identity(field: &FieldRef) -> Self {
        Frame {
            mat: (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            if i == j {
                                FieldElement::one(field)
                            } else {
                                FieldElement::zero(field)
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn swap(field: &FieldRef, a: usize, b: usize) -> Self {
        let mut f = Self::identity(field);
        f.mat.swap(a, b);
        f
    }

    fn random(field: &FieldRef, rng: &mut ChaCha12Rng) -> Self {
        let p = field.characteristic();
        loop {
            let mat: Vec<Vec<FieldElement>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| FieldElement::from_integer(field, rng.gen_range(0..p) as i64))
                        .collect()
                })
                .collect();
            let det = det3(&mat);
            if !det.is_zero() {
                return Frame { mat };
            }
        }
    }

    /// The deterministic frame sequence for a base field.
    pub fn sequence(field: &FieldRef, count: usize) -> Vec<Frame> {
        let mut frames = vec![
            Self::identity(field),
            Self::swap(field, 0, 2),
            Self::swap(field, 1, 2),
        ];
        let mut rng = ChaCha12Rng::seed_from_u64(FRAME_SEED ^ field.characteristic());
        while frames.len() < count {
            frames.push(Self::random(field, &mut rng));
        }
        frames
    }

    /// Substitute `z_i -> sum_j mat[i][j] z_j` into a form.
    pub fn pull_back(&self, form: &MultiPoly) -> MultiPoly {
        let field = form.field().clone();
        let vars = form.vars().clone();
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                let mut acc = MultiPoly::zero(&field, &vars);
                for j in 0..3 {
                    acc = acc.add(&MultiPoly::var(&field, &vars, j).scale(&self.mat[i][j]));
                }
                acc
            })
            .collect();
        form.compose(&images)
    }

    /// Push a solution of the pulled-back system forward to a solution of
    /// the original (matrix-vector product over the point's field).
    pub fn push_forward(&self, point: &[FieldElement]) -> Vec<FieldElement> {
        let field = point[0].field().clone();
        (0..3)
            .map(|i| {
                let mut acc = FieldElement::zero(&field);
                for j in 0..3 {
                    let c = crate::poly::coerce(&self.mat[i][j], &field);
                    acc = acc.add(&c.mul(&point[j]));
                }
                acc
            })
            .collect()
    }
}

fn det3(m: &[Vec<FieldElement>]) -> FieldElement {
    let a = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let b = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let c = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    a.sub(&b).add(&c)
}

/// Closed points of `V(a) ∩ V(b)` in P^2 with intersection multiplicities.
/// Errors with `PositiveDimensional` when the curves share a component.
pub fn plane_intersection(
    a: &MultiPoly,
    b: &MultiPoly,
) -> Result<Vec<(ClosedPoint, usize)>> {
    let field = a.field().clone();
    if !field.is_prime_field() {
        return Err(Error::NotPrimeBase);
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let expected_total = (a.total_degree() * b.total_degree()) as usize;
    for frame in Frame::sequence(&field, MAX_FRAMES) {
        match intersect_in_frame(a, b, &frame)? {
            FrameOutcome::Points(mut points) => {
                let total: usize = points
                    .iter()
                    .map(|(p, m)| p.residue_degree() * m)
                    .sum();
                if total != expected_total {
                    return Err(Error::Internal(format!(
                        "intersection degree {} does not match Bezout {}",
                        total, expected_total
                    )));
                }
                points.sort_by(|(p, _), (q, _)| {
                    p.residue_degree().cmp(&q.residue_degree()).then_with(|| {
                        format!("{}", p).cmp(&format!("{}", q))
                    })
                });
                return Ok(points);
            }
            FrameOutcome::SharedComponent => return Err(Error::PositiveDimensional),
            FrameOutcome::BadFrame => continue,
        }
    }
    Err(Error::Internal(
        "no valid projection frame found for the intersection".into(),
    ))
}

enum FrameOutcome {
    Points(Vec<(ClosedPoint, usize)>),
    SharedComponent,
    BadFrame,
}

fn intersect_in_frame(a: &MultiPoly, b: &MultiPoly, frame: &Frame) -> Result<FrameOutcome> {
    let field = a.field().clone();
    let a = frame.pull_back(a);
    let b = frame.pull_back(b);
    // center of projection [0:0:1] must avoid both curves so that the
    // resultant degree is exactly Bezout and fiber degrees stay full
    let center = vec![
        FieldElement::zero(&field),
        FieldElement::zero(&field),
        FieldElement::one(&field),
    ];
    if a.eval(&center).is_zero() || b.eval(&center).is_zero() {
        return Ok(FrameOutcome::BadFrame);
    }
    let res = resultant(&a, &b, 2)?;
    if res.is_zero() {
        return Ok(FrameOutcome::SharedComponent);
    }
    // the resultant is a binary form in (z1, z2); split off the root at
    // infinity (1:0) and factor the rest as a univariate in z1
    let z2_order = res
        .terms()
        .map(|(expo, _)| expo[1])
        .min()
        .unwrap() as usize;
    let mut base_roots: Vec<(ClosedPoint, usize)> = Vec::new();
    if z2_order > 0 {
        base_roots.push((
            ClosedPoint::new(
                field.clone(),
                1,
                vec![FieldElement::one(&field), FieldElement::zero(&field)],
            ),
            z2_order,
        ));
    }
    let dehom = res.eval_partial(1, &FieldElement::one(&field));
    if dehom.total_degree() > 0 {
        let uni = UniPoly::from_multipoly(&dehom, 0)?;
        for (point, mult) in closed_points_of_unipoly(&uni)? {
            let root = point.coords()[0].clone();
            let one = FieldElement::one(root.field());
            base_roots.push((
                ClosedPoint::new(field.clone(), point.residue_degree(), vec![root, one]),
                mult,
            ));
        }
    }
    // back-substitute along each fiber
    let mut out = Vec::new();
    for (root, mult) in base_roots {
        let rf = root.residue_field();
        let a_k = poly_embed(&a, &rf)?;
        let b_k = poly_embed(&b, &rf)?;
        let alpha = root.coords()[0].clone();
        let beta = root.coords()[1].clone();
        let a_fiber = fiber_poly(&a_k, &alpha, &beta);
        let b_fiber = fiber_poly(&b_k, &alpha, &beta);
        let g = a_fiber.gcd(&b_fiber);
        if g.degree() == 0 {
            return Err(Error::Internal(
                "resultant root with no common point on its fiber".into(),
            ));
        }
        // distinct geometric points on the fiber = roots of the squarefree part
        let sq = g.divmod(&g.gcd(&g.derivative())).0;
        if sq.degree() == 1 {
            // a single geometric point carries the whole resultant order
            let t0 = sq.coeff(0).neg().div(&sq.coeff(1))?;
            let fiber_point = vec![alpha, beta, t0];
            let original = frame.push_forward(&fiber_point);
            out.push((
                ClosedPoint::new(field.clone(), root.residue_degree(), original),
                mult,
            ));
        } else if sq.degree() == mult {
            // as many geometric points as the resultant order: all simple
            for (sub, submult) in closed_points_of_unipoly(&sq)? {
                debug_assert_eq!(submult, 1);
                let big = sub.residue_field();
                let t0 = sub.coords()[0].clone();
                let fiber_point = vec![
                    crate::factor::embed(&alpha, &big)?,
                    crate::factor::embed(&beta, &big)?,
                    t0,
                ];
                let original = frame.push_forward(&fiber_point);
                out.push((
                    ClosedPoint::new(
                        field.clone(),
                        root.residue_degree() * sub.residue_degree(),
                        original,
                    ),
                    1,
                ));
            }
        } else {
            // several points sharing the fiber with multiplicity: the order
            // cannot be attributed; a fresh frame separates them
            return Ok(FrameOutcome::BadFrame);
        }
    }
    Ok(FrameOutcome::Points(out))
}

fn fiber_poly(form: &MultiPoly, alpha: &FieldElement, beta: &FieldElement) -> UniPoly {
    let partial = form.eval_partial(0, alpha).eval_partial(1, beta);
    let field = form.field().clone();
    let mut coeffs =
        vec![FieldElement::zero(&field); partial.degree_in(2) as usize + 1];
    for (expo, c) in partial.terms() {
        coeffs[expo[2] as usize] = c.clone();
    }
    UniPoly::new(&field, coeffs)
}

/// Whether a system of homogeneous forms on P^2 has a common projective
/// zero, decided by pairwise elimination plus candidate verification.
pub fn projective_system_has_zero(system: &[MultiPoly]) -> Result<bool> {
    let nonzero: Vec<&MultiPoly> = system.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    if nonzero.iter().any(|p| p.total_degree() == 0) {
        return Ok(false);
    }
    if nonzero.len() == 1 {
        // a single plane curve always has geometric points
        return Ok(true);
    }
    // find a pair with a finite intersection; verify candidates on the rest
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            match plane_intersection(nonzero[i], nonzero[j]) {
                Ok(points) => {
                    for (point, _) in points {
                        let coords = point.coords();
                        let rf = point.residue_field();
                        let mut all_vanish = true;
                        for (k, poly) in nonzero.iter().enumerate() {
                            if k == i || k == j {
                                continue;
                            }
                            let lifted = poly_embed(poly, &rf)?;
                            if !lifted.eval(coords).is_zero() {
                                all_vanish = false;
                                break;
                            }
                        }
                        if all_vanish {
                            return Ok(true);
                        }
                    }
                    return Ok(false);
                }
                Err(Error::PositiveDimensional) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    // every pair shares a component
    Err(Error::PositiveDimensional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn f7() -> FieldRef {
        FieldDescriptor::prime(7).unwrap()
    }

    #[test]
    fn fermat_cubic_meets_its_hessian_in_nine_points() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let hess = fermat.hessian().unwrap();
        let points = plane_intersection(&fermat, &hess).unwrap();
        assert_eq!(points.len(), 9);
        assert!(points.iter().all(|(p, m)| p.residue_degree() == 1 && *m == 1));
        // spot check: every reported point satisfies both forms
        for (p, _) in &points {
            assert!(fermat.eval(p.coords()).is_zero());
            assert!(hess.eval(p.coords()).is_zero());
        }
    }

    #[test]
    fn line_pair_intersections() {
        let f = f7();
        // two lines meet once
        let l1 = MultiPoly::parse(&f, 3, "x0 + x1").unwrap();
        let l2 = MultiPoly::parse(&f, 3, "x0 - x1 + x2").unwrap();
        let points = plane_intersection(&l1, &l2).unwrap();
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].1, 1);
        // line against conic, tangent case: multiplicity 2
        let conic = MultiPoly::parse(&f, 3, "x0^2 - x1x2").unwrap();
        let tangent = MultiPoly::parse(&f, 3, "x1").unwrap();
        let points = plane_intersection(&conic, &tangent).unwrap();
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].1, 2);
    }

    #[test]
    fn shared_component_detected() {
        let f = f7();
        let a = MultiPoly::parse(&f, 3, "x0x1").unwrap();
        let b = MultiPoly::parse(&f, 3, "x0x2").unwrap();
        assert_eq!(plane_intersection(&a, &b), Err(Error::PositiveDimensional));
    }

    #[test]
    fn extension_points_found() {
        let f = f7();
        // x0^2 = 2 x2^2 along the line x1 = 0: sqrt(2) exists mod 7 (3^2=2),
        // while x0^2 = 3 x2^2 needs a quadratic extension
        let a = MultiPoly::parse(&f, 3, "x0^2 - 3x2^2").unwrap();
        let b = MultiPoly::parse(&f, 3, "x1").unwrap();
        let points = plane_intersection(&a, &b).unwrap();
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].0.residue_degree(), 2);
        assert_eq!(points[0].1, 1);
        let rf = points[0].0.residue_field();
        let lifted = poly_embed(&a, &rf).unwrap();
        assert!(lifted.eval(points[0].0.coords()).is_zero());
    }

    #[test]
    fn system_emptiness() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let grad: Vec<MultiPoly> = fermat.gradient();
        let mut system = vec![fermat.clone()];
        system.extend(grad);
        // smooth: no common zero
        assert!(!projective_system_has_zero(&system).unwrap());
        // cuspidal cubic: singular at [0:0:1]
        let cusp = MultiPoly::parse(&f, 3, "x2x1^2 - x0^3").unwrap();
        let mut system = vec![cusp.clone()];
        system.extend(cusp.gradient());
        assert!(projective_system_has_zero(&system).unwrap());
    }
}
