//! Second and third fundamental forms of a smooth plane curve via branch
//! expansions, the inflection scheme, per-flex local indices, and the
//! enriched total count.
//!
//! At a smooth point the curve is locally a graph `v = b(z)` in an affine
//! chart; the order-2 and order-3 Hasse coefficients of the branch are the
//! second and third fundamental form values in that local model. Inflection
//! points are the zeros of the second fundamental form, located classically
//! as `V(F, Hess F)`, and a simple flex contributes the trace form of
//! `3 * III(p)` from its residue field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::{poly_embed, ClosedPoint};
use crate::field::{FieldElement, FieldRef};
use crate::gw::{trace_form, GWClass};
use crate::intersect::{plane_intersection, projective_system_has_zero, Frame};
use crate::poly::MultiPoly;

fn require_good_characteristic(field: &FieldRef) -> Result<()> {
    match field.characteristic() {
        2 => Err(Error::CharacteristicTwo),
        3 => Err(Error::CharacteristicThree("fundamental forms")),
        _ => Ok(()),
    }
}

/// Smoothness of a plane curve: `F` and its three partials have no common
/// projective zero. Decided by pairwise elimination with candidate checks;
/// shared-component degeneracies are retried in fresh coordinates, and a
/// persistent shared component certifies a singular curve.
pub fn check_smooth(form: &MultiPoly) -> Result<bool> {
    require_good_characteristic(form.field())?;
    if !form.field().is_prime_field() {
        return Err(Error::NotPrimeBase);
    }
    if form.num_vars() != 3 {
        return Err(Error::Parse("plane curves need 3 variables".into()));
    }
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if form.is_zero() || form.total_degree() < 2 {
        return Err(Error::Parse("curve degree must be at least 2".into()));
    }
    let grad = form.gradient();
    if grad.iter().all(|g| g.is_zero()) {
        // all partials vanish identically: a p-th power, nowhere smooth
        return Ok(false);
    }
    for frame in Frame::sequence(form.field(), 8) {
        let g = frame.pull_back(form);
        let mut system = vec![g.clone()];
        system.extend(g.gradient().into_iter().filter(|p| !p.is_zero()));
        match projective_system_has_zero(&system) {
            Ok(has_singular_point) => return Ok(!has_singular_point),
            Err(Error::PositiveDimensional) => continue,
            Err(e) => return Err(e),
        }
    }
    // a component of the curve stays inside the singular system in every
    // frame: the curve is singular along it
    Ok(false)
}

/// The inflection scheme: closed points of `V(F, Hess F)` with intersection
/// multiplicities. Degree-weighted count is `3d(d-2)`.
pub fn inflection_points(form: &MultiPoly) -> Result<Vec<(ClosedPoint, usize)>> {
    if !check_smooth(form)? {
        return Err(Error::NotSmooth);
    }
    let d = form.total_degree();
    if d == 2 {
        // the Hessian of a smooth conic is a nonzero constant
        return Ok(Vec::new());
    }
    let hess = form.hessian()?;
    if hess.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    plane_intersection(form, &hess)
}

/// Truncated branch expansion of the curve at a smooth point: in an affine
/// chart the curve is the graph `v = b_0 + b_1 z + b_2 z^2 + ...` over the
/// local parameter z, and the coefficients are the Hasse derivatives of b.
#[derive(Debug, Clone)]
pub struct BranchExpansion {
    /// Projective representative with the dehomogenized slot equal to 1.
    pub center: Vec<FieldElement>,
    /// Which projective coordinate was set to 1.
    pub dehom_index: usize,
    /// Projective index of the affine parameter direction.
    pub param_index: usize,
    /// Projective index of the graph direction.
    pub graph_index: usize,
    /// `b_0, ..., b_order`.
    pub coeffs: Vec<FieldElement>,
}

impl BranchExpansion {
    /// Second fundamental form value in this local model.
    pub fn ii_value(&self) -> &FieldElement {
        &self.coeffs[2]
    }

    /// Third fundamental form value in this local model.
    pub fn iii_value(&self) -> &FieldElement {
        &self.coeffs[3]
    }
}

/// Expand the curve as a graph at a smooth point, to the requested order
/// (at least 3). The affine chart dehomogenizes at the first nonzero
/// coordinate of the point; the parameter is the first remaining coordinate
/// whose complementary partial is nonzero.
pub fn branch_expand(
    form: &MultiPoly,
    point: &[FieldElement],
    order: usize,
) -> Result<BranchExpansion> {
    branch_expand_dehom(form, point, order, None)
}

/// Branch expansion with an explicit dehomogenization chart (must not
/// vanish at the point); `None` picks the first nonzero coordinate.
pub fn branch_expand_dehom(
    form: &MultiPoly,
    point: &[FieldElement],
    order: usize,
    dehom_index: Option<usize>,
) -> Result<BranchExpansion> {
    require_good_characteristic(form.field())?;
    assert!(order >= 3);
    let field = point[0].field().clone();
    let lifted = poly_embed(form, &field)?;
    if !lifted.eval(point).is_zero() {
        return Err(Error::Internal("branch center does not lie on the curve".into()));
    }
    let dehom = match dehom_index {
        Some(i) => {
            if point[i].is_zero() {
                return Err(Error::Internal(
                    "requested dehomogenization vanishes at the point".into(),
                ));
            }
            i
        }
        None => point
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal("zero projective point".into()))?,
    };
    let scale = point[dehom].inv()?;
    let center: Vec<FieldElement> = point.iter().map(|c| c.mul(&scale)).collect();
    let rest: Vec<usize> = (0..3).filter(|&i| i != dehom).collect();
    let (u_idx, v_idx) = (rest[0], rest[1]);
    let du = lifted.partial(u_idx).eval(&center);
    let dv = lifted.partial(v_idx).eval(&center);
    let (param_index, graph_index, beta) = if !dv.is_zero() {
        (u_idx, v_idx, dv)
    } else if !du.is_zero() {
        (v_idx, u_idx, du)
    } else {
        return Err(Error::NotSmooth);
    };
    // recentered graph equation G(z, w) = F(center + z e_param + w e_graph)
    let zw: Arc<Vec<String>> = Arc::new(vec!["z".into(), "w".into()]);
    let z = MultiPoly::var(&field, &zw, 0);
    let w = MultiPoly::var(&field, &zw, 1);
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let c = MultiPoly::constant(&field, &zw, center[i].clone());
            if i == param_index {
                c.add(&z)
            } else if i == graph_index {
                c.add(&w)
            } else {
                c
            }
        })
        .collect();
    let g = lifted.compose(&images);
    let beta_inv = beta.inv()?;
    // solve w = c_1 z + ... + c_order z^order coefficient by coefficient;
    // the z^k coefficient of G(z, partial sum) is linear in c_k with unit
    // slope beta
    let mut coeffs = vec![center[graph_index].clone()];
    let zvars: Arc<Vec<String>> = Arc::new(vec!["z".into()]);
    let zvar = MultiPoly::var(&field, &zvars, 0);
    for k in 1..=order {
        let mut partial_sum = MultiPoly::zero(&field, &zvars);
        for (j, c) in coeffs.iter().enumerate().skip(1) {
            partial_sum = partial_sum.add(&zvar.pow(j as u32).scale(c));
        }
        let value = g.compose(&[zvar.clone(), partial_sum]);
        let mut expo = vec![0u32];
        expo[0] = k as u32;
        let residual = value.coeff(&expo);
        coeffs.push(residual.mul(&beta_inv).neg());
    }
    Ok(BranchExpansion {
        center,
        dehom_index: dehom,
        param_index,
        graph_index,
        coeffs,
    })
}

/// Per-flex data: the vanishing second fundamental form, the third
/// fundamental form value, and the local index `Tr<3 III(p)>`.
#[derive(Debug, Clone)]
pub struct FlexReport {
    pub point: ClosedPoint,
    pub ii_value: FieldElement,
    pub iii_value: FieldElement,
    pub index: GWClass,
    pub multiplicity: usize,
}

/// Local index of the second fundamental form at a simple flex. Verifies the
/// branch-level mechanism (the derivative of the II coefficient along the
/// branch equals `3 III`) before returning the trace form.
pub fn flex_index(form: &MultiPoly, point: &ClosedPoint, multiplicity: usize) -> Result<FlexReport> {
    if multiplicity > 1 {
        return Err(Error::Hyperflex(multiplicity));
    }
    let branch = branch_expand(form, point.coords(), 4)?;
    let ii = branch.ii_value().clone();
    let iii = branch.iii_value().clone();
    if !ii.is_zero() {
        return Err(Error::Internal(
            "simple inflection point with nonvanishing second fundamental form".into(),
        ));
    }
    if iii.is_zero() {
        return Err(Error::Internal(
            "simple flex with vanishing third fundamental form".into(),
        ));
    }
    // Jacobian mechanism along the branch: differentiate the order-2 Hasse
    // coefficient function of the truncated branch and compare with 3*III
    let field = iii.field().clone();
    let zvars: Arc<Vec<String>> = Arc::new(vec!["z".into()]);
    let zvar = MultiPoly::var(&field, &zvars, 0);
    let mut b_poly = MultiPoly::zero(&field, &zvars);
    for (j, c) in branch.coeffs.iter().enumerate() {
        b_poly = b_poly.add(&zvar.pow(j as u32).scale(c));
    }
    let ii_along_branch = b_poly.hasse_derivative(0, 2);
    let jac_at_center = ii_along_branch
        .partial(0)
        .eval(&[FieldElement::zero(&field)]);
    let three = FieldElement::from_integer(&field, 3);
    if jac_at_center != three.mul(&iii) {
        return Err(Error::Internal(
            "branch Jacobian of II does not equal 3 III".into(),
        ));
    }
    let index = trace_form(&three.mul(&iii))?;
    Ok(FlexReport {
        point: point.clone(),
        ii_value: ii,
        iii_value: iii,
        index,
        multiplicity,
    })
}

/// The enriched inflection count of a smooth general plane curve, with both
/// the `Tr<3 III>` total and the unscaled `Tr<III>` variant, and the
/// hyperbolic comparison when the degree is even.
#[derive(Debug, Clone)]
pub struct FlexCountReport {
    pub reports: Vec<FlexReport>,
    /// `sum_p Tr<3 III(p)>`.
    pub total: GWClass,
    /// `sum_p Tr<III(p)>`.
    pub total_unscaled: GWClass,
    /// `(3d(d-2)/2) H` when d is even; the comparison is skipped for odd d.
    pub expected_hyperbolic: Option<GWClass>,
    pub matches_expected: Option<bool>,
}

pub fn enriched_flex_count(form: &MultiPoly) -> Result<FlexCountReport> {
    let base = form.field().clone();
    let d = form.total_degree() as usize;
    let flexes = inflection_points(form)?;
    for (_, mult) in &flexes {
        if *mult > 1 {
            return Err(Error::Hyperflex(*mult));
        }
    }
    let mut reports = Vec::with_capacity(flexes.len());
    let mut total = GWClass::zero(&base);
    let mut total_unscaled = GWClass::zero(&base);
    for (point, mult) in &flexes {
        let report = flex_index(form, point, *mult)?;
        total = total.add(&report.index)?;
        total_unscaled = total_unscaled.add(&trace_form(&report.iii_value)?)?;
        reports.push(report);
    }
    reports.sort_by(|a, b| {
        a.point
            .residue_degree()
            .cmp(&b.point.residue_degree())
            .then_with(|| format!("{}", a.point).cmp(&format!("{}", b.point)))
    });
    let (expected, matches) = if d % 2 == 0 {
        let expected = GWClass::hyperbolic(&base, 3 * d * (d - 2) / 2);
        let m = total.equal(&expected)?;
        (Some(expected), Some(m))
    } else {
        (None, None)
    };
    Ok(FlexCountReport {
        reports,
        total,
        total_unscaled,
        expected_hyperbolic: expected,
        matches_expected: matches,
    })
}

/// Relative orientability of the fundamental-form bundle: the curve must
/// have even degree and admit a theta characteristic.
pub fn ff_orientability(d: usize, has_theta: bool) -> bool {
    d % 2 == 0 && has_theta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, SquareClass};

    fn f7() -> FieldRef {
        FieldDescriptor::prime(7).unwrap()
    }

    fn f13() -> FieldRef {
        FieldDescriptor::prime(13).unwrap()
    }

    fn elem(f: &FieldRef, n: i64) -> FieldElement {
        FieldElement::from_integer(f, n)
    }

    #[test]
    fn smoothness_examples() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        assert!(check_smooth(&fermat).unwrap());
        let cusp = MultiPoly::parse(&f, 3, "x2x1^2 - x0^3").unwrap();
        assert!(!check_smooth(&cusp).unwrap());
        let triangle = MultiPoly::parse(&f, 3, "x0x1x2").unwrap();
        assert!(!check_smooth(&triangle).unwrap());
    }

    #[test]
    fn characteristic_three_rejected() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let fermat = MultiPoly::parse(&f3, 3, "x0^3+x1^3+x2^3").unwrap();
        assert_eq!(
            check_smooth(&fermat),
            Err(Error::CharacteristicThree("fundamental forms"))
        );
    }

    #[test]
    fn fermat_cubic_has_nine_rational_flexes() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let flexes = inflection_points(&fermat).unwrap();
        assert_eq!(flexes.len(), 9);
        assert!(flexes.iter().all(|(p, m)| p.residue_degree() == 1 && *m == 1));
    }

    #[test]
    fn fermat_quartic_is_all_hyperflexes() {
        let f = f13();
        let fermat = MultiPoly::parse(&f, 3, "x0^4+x1^4+x2^4").unwrap();
        let flexes = inflection_points(&fermat).unwrap();
        // six closed points of degree 2, each of multiplicity 2: twelve
        // geometric hyperflexes, degree-weighted total 24
        let total: usize = flexes.iter().map(|(p, m)| p.residue_degree() * m).sum();
        assert_eq!(total, 24);
        assert!(flexes.iter().all(|(_, m)| *m == 2));
        assert!(matches!(
            enriched_flex_count(&fermat),
            Err(Error::Hyperflex(2))
        ));
    }

    #[test]
    fn conic_has_no_flexes() {
        let f = f7();
        let conic = MultiPoly::parse(&f, 3, "x0^2+x1^2+x2^2").unwrap();
        let report = enriched_flex_count(&conic).unwrap();
        assert!(report.reports.is_empty());
        assert_eq!(report.total.rank(), 0);
        assert_eq!(report.matches_expected, Some(true));
    }

    #[test]
    fn parabola_branch_is_z_squared() {
        let f = f7();
        // v = u^2 at the origin of the z3 = 1 chart: F = x0^2 - x1 x2
        let parabola = MultiPoly::parse(&f, 3, "x0^2 - x1x2").unwrap();
        let origin = vec![elem(&f, 0), elem(&f, 0), elem(&f, 1)];
        let branch = branch_expand(&parabola, &origin, 3).unwrap();
        let got: Vec<FieldElement> = branch.coeffs.clone();
        assert_eq!(
            got,
            vec![elem(&f, 0), elem(&f, 0), elem(&f, 1), elem(&f, 0)]
        );
    }

    #[test]
    fn cubic_graph_flex_at_origin() {
        let f = f7();
        // v = u^3 at the origin: F = x0^3 - x1 x2^2
        let cubic = MultiPoly::parse(&f, 3, "x0^3 - x1x2^2").unwrap();
        let origin = vec![elem(&f, 0), elem(&f, 0), elem(&f, 1)];
        let branch = branch_expand(&cubic, &origin, 3).unwrap();
        assert!(branch.ii_value().is_zero());
        assert!(branch.iii_value().is_one());
    }

    #[test]
    fn fermat_cubic_flex_branch() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let p = vec![elem(&f, 0), elem(&f, 1), elem(&f, -1)];
        let branch = branch_expand(&fermat, &p, 3).unwrap();
        assert!(branch.ii_value().is_zero());
        assert!(!branch.iii_value().is_zero());
        // the implicit solve: x^3 + 1 + (w - 1)^3 = 0 gives b_3 = -1/3 = 2
        assert_eq!(*branch.iii_value(), elem(&f, 2));
    }

    #[test]
    fn flex_index_of_cubic_graph() {
        let f = f7();
        let cubic = MultiPoly::parse(&f, 3, "x1x2^2 - x0^3 + x1^3").unwrap();
        let flexes = inflection_points(&cubic).unwrap();
        // the origin [0:0:1] is among the flexes
        let origin_flex = flexes
            .iter()
            .find(|(p, _)| {
                p.residue_degree() == 1
                    && p.coords()[0].is_zero()
                    && p.coords()[1].is_zero()
            })
            .expect("origin flex present");
        let report = flex_index(&cubic, &origin_flex.0, origin_flex.1).unwrap();
        // index = <3 * III> with III = 1 here: <3>, a nonsquare mod 7
        assert!(report.iii_value.is_one());
        assert_eq!(report.index.rank(), 1);
        assert_eq!(report.index.disc(), SquareClass::Sign(-1));
    }

    #[test]
    fn fermat_cubic_enriched_count() {
        let f = f7();
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let report = enriched_flex_count(&fermat).unwrap();
        assert_eq!(report.reports.len(), 9);
        assert_eq!(report.total.rank(), 9);
        // odd degree: no hyperbolic comparison
        assert!(report.expected_hyperbolic.is_none());
    }

    #[test]
    fn orientability_criterion() {
        assert!(ff_orientability(4, true));
        assert!(!ff_orientability(3, true));
        assert!(!ff_orientability(4, false));
    }
}
