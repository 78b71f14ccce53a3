//! Jets of a form along pointed lines, contact orders, and the Wronskian
//! local index of the jet section.
//!
//! A degree-d form F on P^n cuts out a section of the rank-(2n-1) bundle of
//! jets along lines. Its zeros are the pointed lines meeting V(F) to contact
//! order at least 2n-1, and the local index at a reduced zero is the trace
//! form of the Hasse-Wronskian of the pulled-back gradient, suitably
//! oriented relative to the chosen divisor.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::poly_embed;
use crate::field::{FieldElement, FieldRef};
use crate::flag::{
    chart_membership, chart_pullback, to_chart, ChartId, ChartPoint, PointedLine,
};
use crate::gw::{trace_form, GWClass};
use crate::poly::MultiPoly;
use crate::resultant::det_field;

/// Vanishing order of a form along a pointed line at its marked point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactOrder {
    Finite(usize),
    /// The restriction vanishes identically: the line lies inside the
    /// hypersurface.
    Contained,
}

/// Orienting divisor for the jet bundle: the Pluecker hyperplane V(w_{1,2})
/// for even degree, with the marked-point hyperplane V(z_1) added for odd
/// degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientingDivisor {
    Even,
    Odd,
}

impl OrientingDivisor {
    /// The parity-forced divisor kind for a degree-d form.
    pub fn for_degree(d: usize) -> Self {
        if d % 2 == 0 {
            OrientingDivisor::Even
        } else {
            OrientingDivisor::Odd
        }
    }

    /// Whether a pointed line lies on the divisor.
    pub fn contains(&self, pl: &PointedLine) -> bool {
        let w12 = pl.minor(1, 2);
        match self {
            OrientingDivisor::Even => w12.is_zero(),
            OrientingDivisor::Odd => w12.is_zero() || pl.marked_coord(1).is_zero(),
        }
    }
}

/// Local index data at one zero of the jet section.
#[derive(Debug, Clone)]
pub struct LocalIndexReport {
    pub pointed_line: PointedLine,
    pub residue_degree: usize,
    /// Oriented Wronskian value over the residue field; the index is its
    /// trace form.
    pub wronskian_value: FieldElement,
    pub index: GWClass,
    pub chart_used: ChartId,
    pub on_divisor: bool,
}

/// Lift a form into the field of a pointed line (identity when they match).
fn lift_form(form: &MultiPoly, target: &FieldRef) -> Result<MultiPoly> {
    poly_embed(form, target)
}

/// First `2n-1` Hasse-Taylor coefficients of the pulled-back form along the
/// fiber coordinate of a chart, at the chart point of the pointed line.
pub fn jet_section(
    form: &MultiPoly,
    pl: &PointedLine,
    chart: &ChartId,
) -> Result<Vec<FieldElement>> {
    let n = pl.n();
    let m = 2 * n - 1;
    let d = form.total_degree() as usize;
    if d < m {
        return Err(Error::DegreeTooSmall { d, min: m });
    }
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let lifted = lift_form(form, pl.field())?;
    let cp = to_chart(pl, chart)?;
    let pulled = chart_pullback(&lifted, chart, n)?;
    let yvar = 2 * n - 2;
    let mut restricted = pulled;
    for (i, value) in cp.coords()[..yvar].iter().enumerate() {
        restricted = restricted.eval_partial(i, value);
    }
    restricted.taylor_jets(yvar, cp.fiber_coord(), m)
}

/// Vanishing order of the restriction of a homogeneous form to a line at the
/// marked point, by Hasse jets of an explicit parameterization.
pub fn contact_order(form: &MultiPoly, pl: &PointedLine) -> Result<ContactOrder> {
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let lifted = lift_form(form, pl.field())?;
    let field = pl.field().clone();
    let p = pl.beta_point();
    // a second spanning vector independent of the marked point
    let (y1, _) = pl.point_coeffs();
    let q = if y1.is_zero() {
        pl.rows()[0].clone()
    } else {
        pl.rows()[1].clone()
    };
    let uvars: Arc<Vec<String>> = Arc::new(vec!["u".to_string()]);
    let u = MultiPoly::var(&field, &uvars, 0);
    let images: Vec<MultiPoly> = p
        .iter()
        .zip(&q)
        .map(|(pk, qk)| {
            MultiPoly::constant(&field, &uvars, pk.clone())
                .add(&u.scale(qk))
        })
        .collect();
    let restriction = lifted.compose(&images);
    if restriction.is_zero() {
        return Ok(ContactOrder::Contained);
    }
    let order = restriction
        .terms()
        .map(|(expo, _)| expo[0])
        .min()
        .unwrap() as usize;
    Ok(ContactOrder::Finite(order))
}

/// Determinant of the Jacobian of the jet map `g = (D^(a) beta*F)_a` with
/// respect to the chart coordinates: partials are taken after the Hasse
/// derivatives.
pub fn jacobian_g(form: &MultiPoly, cp: &ChartPoint) -> Result<FieldElement> {
    let n = cp.n();
    let m = 2 * n - 1;
    let lifted = lift_form(form, cp.field())?;
    let pulled = chart_pullback(&lifted, &cp.chart, n)?;
    let yvar = 2 * n - 2;
    let point = cp.coords();
    let mut rows = Vec::with_capacity(m);
    for a in 0..m {
        let jet = pulled.hasse_derivative(yvar, a as u32);
        let row: Vec<FieldElement> = (0..m)
            .map(|c| jet.partial(c).eval(point))
            .collect();
        rows.push(row);
    }
    Ok(det_field(rows))
}

/// Hasse-Wronskian of the gradient of the pulled-back form: rows are
/// `D^(a)` applied to the gradient entries (partials taken first), evaluated
/// at the chart point.
pub fn hasse_wronskian(form: &MultiPoly, cp: &ChartPoint) -> Result<FieldElement> {
    let n = cp.n();
    let m = 2 * n - 1;
    let lifted = lift_form(form, cp.field())?;
    let pulled = chart_pullback(&lifted, &cp.chart, n)?;
    let yvar = 2 * n - 2;
    let grad = pulled.gradient();
    let point = cp.coords();
    let mut rows = Vec::with_capacity(m);
    for a in 0..m {
        let row: Vec<FieldElement> = grad
            .iter()
            .map(|g| g.hasse_derivative(yvar, a as u32).eval(point))
            .collect();
        rows.push(row);
    }
    Ok(det_field(rows))
}

/// Per-chart orientation factor making the Wronskian square class
/// chart-independent off the orienting divisor:
/// `(-1)^((l-1) n) * (w_{1,2} / w_I) * (z_1 / z_{i_l})^d`.
/// It is 1 on the home chart ((1,2),1). The chart-change factor of the
/// Wronskian at a zero is `(-1)^((l+m) n) (w_I/w_J)^a (z_I/z_J)^(m(d-m+1)-2)`
/// with a odd, so this correction cancels it modulo squares.
fn orientation_correction(chart: &ChartId, pl: &PointedLine, d: usize) -> Result<FieldElement> {
    let n = pl.n();
    let w12 = pl.minor(1, 2);
    let wi = pl.minor(chart.i1, chart.i2);
    let z1 = pl.marked_coord(1);
    let zl = pl.marked_coord(chart.marked_column());
    if wi.is_zero() || zl.is_zero() {
        return Err(Error::NotInChart(chart.to_string()));
    }
    if w12.is_zero() {
        return Err(Error::OnOrientingDivisor);
    }
    let mut corr = w12.div(&wi)?;
    if d % 2 == 1 {
        // odd degree: the z-ratio contributes its square class; for even
        // degree it is an honest square and can be dropped
        if z1.is_zero() {
            return Err(Error::OnOrientingDivisor);
        }
        corr = corr.mul(&z1.div(&zl)?.pow(d as u64));
    }
    if chart.ell == 2 && n % 2 == 1 {
        corr = corr.neg();
    }
    Ok(corr)
}

/// The deterministic chart choice at a zero: lexicographically smallest
/// admissible chart.
pub fn preferred_chart(pl: &PointedLine) -> Result<ChartId> {
    ChartId::all(pl.n())
        .into_iter()
        .find(|c| chart_membership(pl, c))
        .ok_or_else(|| Error::Internal("pointed line lies in no chart".into()))
}

/// Local index of the jet section at a highly tangent pointed line: the
/// trace form of the oriented Hasse-Wronskian over the residue field.
pub fn wronskian_index(
    form: &MultiPoly,
    pl: &PointedLine,
    div: OrientingDivisor,
) -> Result<LocalIndexReport> {
    let n = pl.n();
    let m = 2 * n - 1;
    let d = form.total_degree() as usize;
    if d < m {
        return Err(Error::DegreeTooSmall { d, min: m });
    }
    let base = form.field();
    if !base.is_prime_field() && base.is_finite() {
        return Err(Error::NotPrimeBase);
    }
    let residue_degree = if pl.field() == base {
        1
    } else {
        pl.field().extension_degree()
    };
    match contact_order(form, pl)? {
        ContactOrder::Contained => return Err(Error::DegenerateZero),
        ContactOrder::Finite(k) if k < m => return Err(Error::NotHighlyTangent(m)),
        ContactOrder::Finite(_) => {}
    }
    let on_divisor = div.contains(pl);
    if on_divisor {
        return Err(Error::OnOrientingDivisor);
    }
    let chart = preferred_chart(pl)?;
    let cp = to_chart(pl, &chart)?;
    let wronskian = hasse_wronskian(form, &cp)?;
    if wronskian.is_zero() {
        return Err(Error::DegenerateZero);
    }
    let corr = orientation_correction(&chart, pl, d)?;
    let oriented = corr.mul(&wronskian);
    let index = trace_form(&oriented)?;
    Ok(LocalIndexReport {
        pointed_line: pl.clone(),
        residue_degree,
        wronskian_value: oriented,
        index,
        chart_used: chart,
        on_divisor,
    })
}

/// Index recomputed in a specific admissible chart (used for the
/// chart-independence checks).
pub fn wronskian_index_in_chart(
    form: &MultiPoly,
    pl: &PointedLine,
    div: OrientingDivisor,
    chart: &ChartId,
) -> Result<GWClass> {
    if div.contains(pl) {
        return Err(Error::OnOrientingDivisor);
    }
    let d = form.total_degree() as usize;
    let cp = to_chart(pl, chart)?;
    let wronskian = hasse_wronskian(form, &cp)?;
    if wronskian.is_zero() {
        return Err(Error::DegenerateZero);
    }
    let corr = orientation_correction(chart, pl, d)?;
    trace_form(&corr.mul(&wronskian))
}

/// Total enriched tangency count for a smooth plane curve (n = 2): every
/// inflection point contributes the trace form of its oriented Wronskian at
/// the tangent pointed line.
pub struct EnrichedCount {
    pub total: GWClass,
    pub reports: Vec<LocalIndexReport>,
}

pub fn enriched_count_n2(form: &MultiPoly, div: OrientingDivisor) -> Result<EnrichedCount> {
    let base = form.field().clone();
    if !base.is_prime_field() {
        return Err(Error::NotPrimeBase);
    }
    let d = form.total_degree() as usize;
    if d < 3 {
        return Err(Error::DegreeTooSmall { d, min: 3 });
    }
    if !crate::fundamental::check_smooth(form)? {
        return Err(Error::NotSmooth);
    }
    let flexes = crate::fundamental::inflection_points(form)?;
    let mut reports = Vec::new();
    let mut total = GWClass::zero(&base);
    for (point, mult) in &flexes {
        if *mult > 1 {
            return Err(Error::Hyperflex(*mult));
        }
        let pl = tangent_pointed_line(form, point.coords())?;
        let report = wronskian_index(form, &pl, div)?;
        total = total.add(&report.index)?;
        reports.push(report);
    }
    reports.sort_by(|a, b| {
        a.residue_degree
            .cmp(&b.residue_degree)
            .then_with(|| format!("{:?}", a.pointed_line).cmp(&format!("{:?}", b.pointed_line)))
    });
    let expected_rank = (3 * d * (d - 2)) as i64;
    if total.rank() != expected_rank {
        return Err(Error::Internal(format!(
            "enriched count rank {} does not match 3d(d-2) = {}",
            total.rank(),
            expected_rank
        )));
    }
    Ok(EnrichedCount { total, reports })
}

/// The tangent line of a plane curve at a smooth point, marked at that
/// point. The span consists of the point itself and a deterministic second
/// kernel vector of the gradient.
pub fn tangent_pointed_line(form: &MultiPoly, point: &[FieldElement]) -> Result<PointedLine> {
    let field = point[0].field().clone();
    let lifted = lift_form(form, &field)?;
    let grad: Vec<FieldElement> = lifted.gradient().iter().map(|g| g.eval(point)).collect();
    let pivot = grad
        .iter()
        .position(|g| !g.is_zero())
        .ok_or(Error::NotSmooth)?;
    let pivot_inv = grad[pivot].inv()?;
    // kernel basis vectors e_j - (g_j / g_pivot) e_pivot for j != pivot
    let mut candidates = Vec::new();
    for j in 0..3 {
        if j == pivot {
            continue;
        }
        let mut v = vec![FieldElement::zero(&field); 3];
        v[j] = FieldElement::one(&field);
        v[pivot] = grad[j].mul(&pivot_inv).neg();
        candidates.push(v);
    }
    let q = candidates
        .into_iter()
        .find(|v| {
            // not proportional to the point: some 2x2 minor survives
            (0..3).any(|i| {
                (i + 1..3).any(|j| {
                    !point[i]
                        .mul(&v[j])
                        .sub(&point[j].mul(&v[i]))
                        .is_zero()
                })
            })
        })
        .ok_or_else(|| Error::Internal("tangent direction proportional to the point".into()))?;
    PointedLine::new(
        [point.to_vec(), q],
        (FieldElement::one(&field), FieldElement::zero(&field)),
    )
}
