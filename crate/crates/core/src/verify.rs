//! Randomized verification of the identities the rest of the crate relies
//! on, against independent oracles: symbolic quotient-rule differentiation
//! for chart transitions, operator-order swaps for the Wronskian/Jacobian
//! matrix, Taylor reconstruction for Hasse derivatives, and the ring laws
//! of GW(k). Each check reports counterexamples rather than panicking.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::error::Result;
use crate::field::{FieldDescriptor, FieldElement, FieldRef};
use crate::flag::{
    chart_membership, chart_vars, to_chart, transition_jacobian, ChartId, ChartPoint,
    PointedLine,
};
use crate::gw::{trace_form, GWClass};
use crate::poly::{binomial_bigint, MultiPoly};
use crate::resultant::det_field;
use crate::tangency::{hasse_wronskian, jacobian_g};

/// Outcome of one verification run.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub property: String,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn random_element(field: &FieldRef, rng: &mut ChaCha12Rng) -> FieldElement {
    if field.is_finite() {
        let p = field.characteristic();
        let digits: Vec<u64> = (0..field.extension_degree())
            .map(|_| rng.gen_range(0..p))
            .collect();
        FieldElement::from_u64_coeffs(field, digits)
    } else {
        FieldElement::from_integer(field, rng.gen_range(-20..=20))
    }
}

pub fn random_nonzero(field: &FieldRef, rng: &mut ChaCha12Rng) -> FieldElement {
    loop {
        let x = random_element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Dense random homogeneous form of the given degree.
pub fn random_homogeneous(
    field: &FieldRef,
    nvars: usize,
    degree: u32,
    rng: &mut ChaCha12Rng,
) -> MultiPoly {
    let vars: Arc<Vec<String>> = Arc::new((0..nvars).map(|i| format!("x{}", i)).collect());
    loop {
        let mut poly = MultiPoly::zero(field, &vars);
        let mut expo = vec![0u32; nvars];
        loop {
            // iterate over all exponent tuples of total degree `degree`
            let total: u32 = expo.iter().sum();
            if total == degree {
                let c = random_element(field, rng);
                poly = poly.add(&MultiPoly::monomial(field, &vars, expo.clone(), c));
            }
            // odometer over tuples with entries <= degree
            let mut i = 0;
            loop {
                if i == nvars {
                    break;
                }
                expo[i] += 1;
                if expo[i] <= degree {
                    break;
                }
                expo[i] = 0;
                i += 1;
            }
            if i == nvars {
                break;
            }
        }
        if !poly.is_zero() {
            return poly;
        }
    }
}

pub fn random_pointed_line_in_chart(
    field: &FieldRef,
    n: usize,
    chart: &ChartId,
    rng: &mut ChaCha12Rng,
) -> PointedLine {
    loop {
        let rows = [
            (0..=n).map(|_| random_element(field, rng)).collect::<Vec<_>>(),
            (0..=n).map(|_| random_element(field, rng)).collect::<Vec<_>>(),
        ];
        let y = (random_element(field, rng), random_element(field, rng));
        if let Ok(pl) = PointedLine::new(rows, y) {
            if chart_membership(&pl, chart) {
                return pl;
            }
        }
    }
}

pub fn random_chart_point(
    field: &FieldRef,
    n: usize,
    chart: ChartId,
    rng: &mut ChaCha12Rng,
) -> ChartPoint {
    let coords: Vec<FieldElement> = (0..2 * n - 1)
        .map(|_| random_element(field, rng))
        .collect();
    ChartPoint::new(chart, n, coords).expect("correct coordinate count")
}

/// The Wronskian = Jacobian identity: the determinant of the jet-map
/// Jacobian (partials after Hasse derivatives) equals the Hasse-Wronskian of
/// the gradient (partials before Hasse derivatives), at arbitrary chart
/// points.
pub fn wronskian_jacobian_trials(
    field: &FieldRef,
    n: usize,
    degree: u32,
    trials: usize,
    rng: &mut ChaCha12Rng,
) -> Result<VerifyOutcome> {
    let charts = ChartId::all(n);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let form = random_homogeneous(field, n + 1, degree, rng);
        let chart = charts[rng.gen_range(0..charts.len())];
        let cp = random_chart_point(field, n, chart, rng);
        let jac = jacobian_g(&form, &cp)?;
        let wr = hasse_wronskian(&form, &cp)?;
        if jac != wr {
            failures.push(format!(
                "trial {}: chart {} point {:?}: Jacobian {} != Wronskian {} for F = {}",
                trial,
                chart,
                cp.coords(),
                jac,
                wr,
                form
            ));
        }
    }
    Ok(VerifyOutcome {
        property: format!("wronskian-jacobian (n={}, d={})", n, degree),
        trials,
        failures,
    })
}

/// A quotient of polynomials with formal differentiation, the oracle side of
/// the transition check.
#[derive(Clone)]
struct RatFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFn {
    fn partial(&self, var: usize) -> RatFn {
        RatFn {
            num: self
                .num
                .partial(var)
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.partial(var))),
            den: self.den.mul(&self.den),
        }
    }

    fn eval(&self, point: &[FieldElement]) -> FieldElement {
        self.num
            .eval(point)
            .div(&self.den.eval(point))
            .expect("denominator nonzero at evaluation point")
    }
}

/// Build the transition map `phi_{c2} o phi_{c1}^{-1}` symbolically as
/// rational functions of the source chart coordinates.
fn symbolic_transition(field: &FieldRef, n: usize, c1: &ChartId, c2: &ChartId) -> Vec<RatFn> {
    let vars = chart_vars(n);
    let zero = MultiPoly::zero(field, &vars);
    let one = MultiPoly::from_int(field, &vars, 1);
    // rows of the source-reduced matrix as polynomials
    let mut row1 = vec![zero.clone(); n + 1];
    let mut row2 = vec![zero.clone(); n + 1];
    row1[c1.i1 - 1] = one.clone();
    row2[c1.i2 - 1] = one.clone();
    let mut slot = 0usize;
    for k in 1..=n + 1 {
        if k == c1.i1 || k == c1.i2 {
            continue;
        }
        row1[k - 1] = MultiPoly::var(field, &vars, 2 * slot);
        row2[k - 1] = MultiPoly::var(field, &vars, 2 * slot + 1);
        slot += 1;
    }
    let t = MultiPoly::var(field, &vars, 2 * n - 2);
    let (y1, y2) = if c1.ell == 1 {
        (one.clone(), t)
    } else {
        (t, one.clone())
    };
    // target minor and reduced rows over the common denominator
    let (j1, j2) = (c2.i1, c2.i2);
    let m11 = row1[j1 - 1].clone();
    let m12 = row1[j2 - 1].clone();
    let m21 = row2[j1 - 1].clone();
    let m22 = row2[j2 - 1].clone();
    let det = m11.mul(&m22).sub(&m12.mul(&m21));
    let mut out = Vec::with_capacity(2 * n - 1);
    for k in 1..=n + 1 {
        if k == j1 || k == j2 {
            continue;
        }
        let n1 = m22.mul(&row1[k - 1]).sub(&m12.mul(&row2[k - 1]));
        let n2 = m11.mul(&row2[k - 1]).sub(&m21.mul(&row1[k - 1]));
        out.push(RatFn {
            num: n1,
            den: det.clone(),
        });
        out.push(RatFn {
            num: n2,
            den: det.clone(),
        });
    }
    let z = |col: usize| -> MultiPoly {
        y1.mul(&row1[col - 1]).add(&y2.mul(&row2[col - 1]))
    };
    out.push(RatFn {
        num: z(c2.other_column()),
        den: z(c2.marked_column()),
    });
    out
}

/// The closed-form transition Jacobian against symbolic differentiation of
/// the composed chart maps. `corrupt` perturbs the closed form (negative
/// control for the test harness).
pub fn transition_trials(
    field: &FieldRef,
    n: usize,
    trials: usize,
    rng: &mut ChaCha12Rng,
    corrupt: bool,
) -> Result<VerifyOutcome> {
    let charts = ChartId::all(n);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < trials {
        let c1 = charts[rng.gen_range(0..charts.len())];
        let c2 = charts[rng.gen_range(0..charts.len())];
        let pl = random_pointed_line_in_chart(field, n, &c1, rng);
        if !chart_membership(&pl, &c2) {
            continue;
        }
        done += 1;
        let mut closed = transition_jacobian(&c1, &c2, &pl)?;
        if corrupt && c1 != c2 {
            // drop the sign factor (a plausible transcription slip)
            closed = closed.neg();
        }
        let source = to_chart(&pl, &c1)?;
        let targets = symbolic_transition(pl.field(), n, &c1, &c2);
        let m = 2 * n - 1;
        let mut mat = Vec::with_capacity(m);
        for target in &targets {
            let row: Vec<FieldElement> = (0..m)
                .map(|v| target.partial(v).eval(source.coords()))
                .collect();
            mat.push(row);
        }
        // rows indexed by target coordinate, columns by source variable
        let symbolic = det_field(mat);
        if symbolic != closed {
            failures.push(format!(
                "trial {}: {} -> {} at {:?}: closed form {} != symbolic {}",
                done,
                c1,
                c2,
                source.coords(),
                closed,
                symbolic
            ));
        }
    }
    Ok(VerifyOutcome {
        property: format!("transition (n={})", n),
        trials,
        failures,
    })
}

/// Hasse-derivative property suite: the composition law, Taylor
/// reconstruction (including characteristic p at degrees past p), and the
/// commutation of Hasse derivatives with ordinary partials.
pub fn hasse_taylor_trials(
    field: &FieldRef,
    trials: usize,
    rng: &mut ChaCha12Rng,
) -> Result<VerifyOutcome> {
    let mut failures = Vec::new();
    let tvars: Arc<Vec<String>> = Arc::new(vec!["t".into()]);
    let xyvars: Arc<Vec<String>> = Arc::new(vec!["x".into(), "y".into()]);
    for trial in 0..trials {
        // univariate with degree possibly past the characteristic
        let deg = rng.gen_range(0..=30u32);
        let mut f = MultiPoly::zero(field, &tvars);
        for k in 0..=deg {
            f = f.add(&MultiPoly::monomial(
                field,
                &tvars,
                vec![k],
                random_element(field, rng),
            ));
        }
        // composition law D^(a) D^(b) = C(a+b, a) D^(a+b)
        let a = rng.gen_range(0..=6u32);
        let b = rng.gen_range(0..=6u32);
        let lhs = f.hasse_derivative(0, b).hasse_derivative(0, a);
        let factor = FieldElement::from_bigint(
            field,
            &binomial_bigint((a + b) as u64, a as u64),
        );
        let rhs = f.hasse_derivative(0, a + b).scale(&factor);
        if lhs != rhs {
            failures.push(format!(
                "trial {}: composition law fails for a={}, b={}, f={}",
                trial, a, b, f
            ));
        }
        // Taylor reconstruction at a random center
        let center = random_element(field, rng);
        let m = deg as usize + 1;
        let jets = f.taylor_jets(0, &center, m)?;
        let t = MultiPoly::var(field, &tvars, 0);
        let shift = t.sub(&MultiPoly::constant(field, &tvars, center.clone()));
        let mut rebuilt = MultiPoly::zero(field, &tvars);
        for (k, jet) in jets.iter().enumerate() {
            rebuilt = rebuilt.add(&shift.pow(k as u32).scale(jet));
        }
        if rebuilt != f {
            failures.push(format!(
                "trial {}: Taylor reconstruction fails at center {} for f={}",
                trial, center, f
            ));
        }
        // commutation with partials on a bivariate sample
        let mut g = MultiPoly::zero(field, &xyvars);
        for _ in 0..8 {
            let e0 = rng.gen_range(0..=6u32);
            let e1 = rng.gen_range(0..=6u32);
            g = g.add(&MultiPoly::monomial(
                field,
                &xyvars,
                vec![e0, e1],
                random_element(field, rng),
            ));
        }
        let a = rng.gen_range(0..=5u32);
        let dx_then_hasse = g.partial(0).hasse_derivative(1, a);
        let hasse_then_dx = g.hasse_derivative(1, a).partial(0);
        if dx_then_hasse != hasse_then_dx {
            failures.push(format!(
                "trial {}: D_y^({}) does not commute with d/dx on {}",
                trial, a, g
            ));
        }
        let dy_then_hasse = g.partial(1).hasse_derivative(1, a);
        let hasse_then_dy = g.hasse_derivative(1, a).partial(1);
        if dy_then_hasse != hasse_then_dy {
            failures.push(format!(
                "trial {}: D_y^({}) does not commute with d/dy on {}",
                trial, a, g
            ));
        }
    }
    Ok(VerifyOutcome {
        property: format!("hasse-taylor over {}", field.spec_string()),
        trials,
        failures,
    })
}

/// GW ring laws and trace-form identities on random inputs.
pub fn gw_law_trials(
    field: &FieldRef,
    trials: usize,
    rng: &mut ChaCha12Rng,
) -> Result<VerifyOutcome> {
    let mut failures = Vec::new();
    let h = GWClass::hyperbolic(field, 1);
    let sample = |rng: &mut ChaCha12Rng| -> Result<GWClass> {
        let k = rng.gen_range(1..4);
        let entries: Vec<FieldElement> = (0..k).map(|_| random_nonzero(field, rng)).collect();
        GWClass::diag(field, entries)
    };
    for trial in 0..trials {
        let a = random_nonzero(field, rng);
        let u = random_nonzero(field, rng);
        let s = random_nonzero(field, rng);
        // <a> + <-a> = H
        let c = GWClass::diag(field, vec![a.clone(), a.neg()])?;
        if !c.equal(&h)? {
            failures.push(format!("trial {}: <a>+<-a> != H for a = {}", trial, a));
        }
        // <u> H = H
        let prod = GWClass::rank_one(&u)?.mul(&h)?;
        if !prod.equal(&h)? {
            failures.push(format!("trial {}: <u>H != H for u = {}", trial, u));
        }
        // <s^2 a> = <a>
        let scaled = GWClass::rank_one(&a.mul(&s).mul(&s))?;
        if !scaled.equal(&GWClass::rank_one(&a)?)? {
            failures.push(format!(
                "trial {}: <s^2 a> != <a> for a = {}, s = {}",
                trial, a, s
            ));
        }
        // ring laws on random triples
        let (x, y, z) = (sample(rng)?, sample(rng)?, sample(rng)?);
        let assoc_left = x.add(&y)?.add(&z)?;
        let assoc_right = x.add(&y.add(&z)?)?;
        if !assoc_left.equal(&assoc_right)? {
            failures.push(format!("trial {}: addition associativity fails", trial));
        }
        let dist_left = x.mul(&y.add(&z)?)?;
        let dist_right = x.mul(&y)?.add(&x.mul(&z)?)?;
        if !dist_left.equal(&dist_right)? {
            failures.push(format!("trial {}: distributivity fails", trial));
        }
        if !x.mul(&y)?.equal(&y.mul(&x)?)? {
            failures.push(format!("trial {}: multiplication commutativity fails", trial));
        }
    }
    // trace-form congruence certificates over extensions (finite base only);
    // trace_form itself verifies D = S^T G S exactly and errors on failure
    if field.is_prime_field() {
        for e in [2usize, 3] {
            let ext = FieldDescriptor::extension(field, e)?;
            for trial in 0..trials.min(20) {
                let a = random_nonzero(&ext, rng);
                if let Err(err) = trace_form(&a) {
                    failures.push(format!(
                        "extension degree {}, trial {}: trace form certificate failed: {}",
                        e, trial, err
                    ));
                }
            }
        }
    }
    Ok(VerifyOutcome {
        property: format!("gw-laws over {}", field.spec_string()),
        trials,
        failures,
    })
}
