//! The flag variety of pointed lines in P^n: standard charts, the chart
//! isomorphisms and their inverses, the projection to P^n, pullbacks of
//! forms, and the closed-form transition Jacobian.
//!
//! A chart `U_{I,l}` is indexed by a column pair `I = (i1 < i2)` and a marked
//! slot `l` in {1, 2}. Chart coordinates are the reduced Grassmann matrix
//! entries interleaved by column, followed by the fiber coordinate
//! `t = z_{i_{l'}} / z_{i_l}`, where `z_i = y1 x_{1,i} + y2 x_{2,i}` are the
//! marked-point coordinates.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};
use crate::poly::MultiPoly;

/// A line in P^n with a marked point: a rank-2 spanning matrix (rows are the
/// spanning vectors) and the coefficients of the marked point in those rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedLine {
    field: FieldRef,
    rows: [Vec<FieldElement>; 2],
    point_coeffs: (FieldElement, FieldElement),
}

impl PointedLine {
    pub fn new(
        rows: [Vec<FieldElement>; 2],
        point_coeffs: (FieldElement, FieldElement),
    ) -> Result<Self> {
        if rows[0].len() != rows[1].len() || rows[0].len() < 2 {
            return Err(Error::Parse("span rows must share a length >= 2".into()));
        }
        let field = rows[0][0].field().clone();
        let pl = PointedLine {
            field,
            rows,
            point_coeffs,
        };
        if !pl.has_rank_two() {
            return Err(Error::RankDeficient);
        }
        if pl.point_coeffs.0.is_zero() && pl.point_coeffs.1.is_zero() {
            return Err(Error::ZeroMarkedPoint);
        }
        Ok(pl)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Ambient dimension n (rows have n+1 entries).
    pub fn n(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<FieldElement>; 2] {
        &self.rows
    }

    pub fn point_coeffs(&self) -> &(FieldElement, FieldElement) {
        &self.point_coeffs
    }

    fn has_rank_two(&self) -> bool {
        let cols = self.rows[0].len();
        for i in 0..cols {
            for j in i + 1..cols {
                if !self.minor(i + 1, j + 1).is_zero() {
                    return true;
                }
            }
        }
        false
    }

    /// Pluecker minor `w_{i1,i2}` at 1-based columns.
    pub fn minor(&self, i1: usize, i2: usize) -> FieldElement {
        let a = &self.rows[0];
        let b = &self.rows[1];
        a[i1 - 1]
            .mul(&b[i2 - 1])
            .sub(&a[i2 - 1].mul(&b[i1 - 1]))
    }

    /// Marked-point coordinate `z_i = y1 x_{1,i} + y2 x_{2,i}` (1-based).
    pub fn marked_coord(&self, i: usize) -> FieldElement {
        let (y1, y2) = &self.point_coeffs;
        y1.mul(&self.rows[0][i - 1]).add(&y2.mul(&self.rows[1][i - 1]))
    }

    /// Homogeneous coordinates of the marked point in P^n.
    pub fn beta_point(&self) -> Vec<FieldElement> {
        (1..=self.n() + 1).map(|i| self.marked_coord(i)).collect()
    }

    /// Parse `r11,...,r1(n+1);r21,...,r2(n+1);y1,y2`.
    pub fn parse(field: &FieldRef, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(
                "pointed line format: row1;row2;y1,y2".into(),
            ));
        }
        let parse_list = |s: &str| -> Result<Vec<FieldElement>> {
            s.split(',')
                .map(|tok| FieldElement::parse(field, tok))
                .collect()
        };
        let r1 = parse_list(parts[0])?;
        let r2 = parse_list(parts[1])?;
        let y = parse_list(parts[2])?;
        if y.len() != 2 {
            return Err(Error::Parse("expected two point coefficients".into()));
        }
        PointedLine::new([r1, r2], (y[0].clone(), y[1].clone()))
    }
}

/// Index of a standard chart: columns `I = (i1 < i2)` (1-based) and the
/// marked slot `l` in {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartId {
    pub i1: usize,
    pub i2: usize,
    pub ell: u8,
}

impl ChartId {
    pub fn new(i1: usize, i2: usize, ell: u8) -> Result<Self> {
        if i1 == 0 || i1 >= i2 || !(ell == 1 || ell == 2) {
            return Err(Error::Parse(format!(
                "invalid chart id (I=({},{}), l={})",
                i1, i2, ell
            )));
        }
        Ok(ChartId { i1, i2, ell })
    }

    /// Marked column `i_l` (1-based).
    pub fn marked_column(&self) -> usize {
        if self.ell == 1 {
            self.i1
        } else {
            self.i2
        }
    }

    /// The other column `i_{l'}`.
    pub fn other_column(&self) -> usize {
        if self.ell == 1 {
            self.i2
        } else {
            self.i1
        }
    }

    /// All charts of Phi_{1,n} in lexicographic (i1, i2, l) order.
    pub fn all(n: usize) -> Vec<ChartId> {
        let mut out = Vec::new();
        for i1 in 1..=n {
            for i2 in i1 + 1..=n + 1 {
                for ell in 1..=2u8 {
                    out.push(ChartId { i1, i2, ell });
                }
            }
        }
        out
    }

    /// Parse `I=i1,i2;l=1|2`.
    pub fn parse(text: &str) -> Result<Self> {
        let (ipart, lpart) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("chart id: {}", text)))?;
        let cols = ipart
            .strip_prefix("I=")
            .ok_or_else(|| Error::Parse(format!("chart id: {}", text)))?;
        let (a, b) = cols
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("chart id: {}", text)))?;
        let ell = lpart
            .strip_prefix("l=")
            .ok_or_else(|| Error::Parse(format!("chart id: {}", text)))?;
        ChartId::new(
            a.parse().map_err(|_| Error::Parse(text.into()))?,
            b.parse().map_err(|_| Error::Parse(text.into()))?,
            ell.parse().map_err(|_| Error::Parse(text.into()))?,
        )
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={},{};l={}", self.i1, self.i2, self.ell)
    }
}

/// Affine coordinates of a pointed line in one chart: the 2(n-1) reduced
/// Grassmann entries interleaved by complement column, then the fiber
/// coordinate. Total length 2n-1, the dimension of the flag variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoint {
    pub chart: ChartId,
    n: usize,
    coords: Vec<FieldElement>,
}

impl ChartPoint {
    pub fn new(chart: ChartId, n: usize, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.len() != 2 * n - 1 {
            return Err(Error::Parse(format!(
                "chart point needs {} coordinates, got {}",
                2 * n - 1,
                coords.len()
            )));
        }
        Ok(ChartPoint { chart, n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }

    /// Grassmann block: pairs `(x_{1,j}, x_{2,j})` for the complement columns.
    pub fn grassmann_coords(&self) -> &[FieldElement] {
        &self.coords[..2 * (self.n - 1)]
    }

    pub fn fiber_coord(&self) -> &FieldElement {
        &self.coords[2 * self.n - 2]
    }
}

/// Variable names for polynomials on a chart: `a1, b1, ..., a(n-1), b(n-1), y`.
pub fn chart_vars(n: usize) -> Arc<Vec<String>> {
    let mut names = Vec::with_capacity(2 * n - 1);
    for j in 1..n {
        names.push(format!("a{}", j));
        names.push(format!("b{}", j));
    }
    names.push("y".to_string());
    Arc::new(names)
}

/// Both chart conditions: the I-minor and the marked coordinate `z_{i_l}`
/// are nonzero.
pub fn chart_membership(pl: &PointedLine, c: &ChartId) -> bool {
    if c.i2 > pl.n() + 1 {
        return false;
    }
    !pl.minor(c.i1, c.i2).is_zero() && !pl.marked_coord(c.marked_column()).is_zero()
}

/// Chart coordinates of a member: row-reduce so columns I become the
/// identity, transform the point coefficients, and dehomogenize the fiber.
pub fn to_chart(pl: &PointedLine, c: &ChartId) -> Result<ChartPoint> {
    if !chart_membership(pl, c) {
        return Err(Error::NotInChart(c.to_string()));
    }
    let n = pl.n();

    let (a, b) = (&pl.rows[0], &pl.rows[1]);
    let det = pl.minor(c.i1, c.i2);
    let det_inv = det.inv().expect("membership guarantees a unit minor");
    // M' = M_I^{-1} M with M_I = [[a[i1], a[i2]], [b[i1], b[i2]]]
    let (m11, m12) = (a[c.i1 - 1].clone(), a[c.i2 - 1].clone());
    let (m21, m22) = (b[c.i1 - 1].clone(), b[c.i2 - 1].clone());
    let row1: Vec<FieldElement> = (0..=n)
        .map(|k| m22.mul(&a[k]).sub(&m12.mul(&b[k])).mul(&det_inv))
        .collect();
    let row2: Vec<FieldElement> = (0..=n)
        .map(|k| m11.mul(&b[k]).sub(&m21.mul(&a[k])).mul(&det_inv))
        .collect();
    let mut coords = Vec::with_capacity(2 * n - 1);
    for k in 1..=n + 1 {
        if k == c.i1 || k == c.i2 {
            continue;
        }
        coords.push(row1[k - 1].clone());
        coords.push(row2[k - 1].clone());
    }
    let z_marked = pl.marked_coord(c.marked_column());
    let z_other = pl.marked_coord(c.other_column());
    coords.push(z_other.div(&z_marked).expect("marked coordinate is a unit"));
    ChartPoint::new(*c, n, coords)
}

/// The pointed line a chart point represents, in row-reduced form (identity
/// block in columns I, marked coefficient 1 in slot l).
pub fn from_chart(cp: &ChartPoint) -> PointedLine {
    let n = cp.n;
    let field = cp.field().clone();
    let c = &cp.chart;
    let zero = FieldElement::zero(&field);
    let one = FieldElement::one(&field);
    let mut row1 = vec![zero.clone(); n + 1];
    let mut row2 = vec![zero.clone(); n + 1];
    row1[c.i1 - 1] = one.clone();
    row2[c.i2 - 1] = one.clone();
    let mut g = cp.grassmann_coords().iter();
    for k in 1..=n + 1 {
        if k == c.i1 || k == c.i2 {
            continue;
        }
        row1[k - 1] = g.next().unwrap().clone();
        row2[k - 1] = g.next().unwrap().clone();
    }
    let t = cp.fiber_coord().clone();
    let y = if c.ell == 1 {
        (one, t)
    } else {
        (t, one)
    };
    PointedLine::new([row1, row2], y).expect("chart data always yields a valid pointed line")
}

/// The marked point of the universal line over a chart, as polynomials in
/// the chart variables: component `i_l` is 1, component `i_{l'}` is `y`, and
/// the complement columns are linear in the Grassmann block.
pub fn universal_point(field: &FieldRef, c: &ChartId, n: usize) -> Vec<MultiPoly> {
    let vars = chart_vars(n);
    let y = MultiPoly::var(field, &vars, 2 * n - 2);
    let one = MultiPoly::from_int(field, &vars, 1);
    let mut cols = Vec::with_capacity(n + 1);
    let mut j = 0usize; // complement column counter
    for k in 1..=n + 1 {
        if k == c.i1 || k == c.i2 {
            cols.push(if k == c.marked_column() {
                one.clone()
            } else {
                y.clone()
            });
            continue;
        }
        let a = MultiPoly::var(field, &vars, 2 * j);
        let b = MultiPoly::var(field, &vars, 2 * j + 1);
        // row of the marked slot contributes the constant term, the other
        // row comes in multiplied by the fiber coordinate
        let col = if c.ell == 1 {
            a.add(&y.mul(&b))
        } else {
            b.add(&y.mul(&a))
        };
        cols.push(col);
        j += 1;
    }
    cols
}

/// Pull a homogeneous form on P^n back along beta in a chart: substitute the
/// universal point and dehomogenize (the marked column becomes 1).
pub fn chart_pullback(form: &MultiPoly, c: &ChartId, n: usize) -> Result<MultiPoly> {
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if form.num_vars() != n + 1 {
        return Err(Error::Parse(format!(
            "form must have {} variables for P^{}",
            n + 1,
            n
        )));
    }
    let images = universal_point(form.field(), c, n);
    Ok(form.compose(&images))
}

/// The pullback in the distinguished chart `((n, n+1), 2)`:
/// `F(a1 y + b1, ..., a(n-1) y + b(n-1), y, 1)`.
pub fn beta_pullback(form: &MultiPoly, n: usize) -> Result<MultiPoly> {
    let c = ChartId::new(n, n + 1, 2)?;
    chart_pullback(form, &c, n)
}

/// Affine image of beta in the distinguished chart `((n, n+1), 2)`, in the
/// patch `z_{n+1} = 1`: `(a1 y + b1, ..., a(n-1) y + b(n-1), y)`.
pub fn beta_chart(cp: &ChartPoint) -> Result<Vec<FieldElement>> {
    let n = cp.n();
    if cp.chart != ChartId::new(n, n + 1, 2)? {
        return Err(Error::UnsupportedChart);
    }
    let y = cp.fiber_coord();
    let g = cp.grassmann_coords();
    let mut out = Vec::with_capacity(n);
    for j in 0..n - 1 {
        out.push(g[2 * j].mul(y).add(&g[2 * j + 1]));
    }
    out.push(y.clone());
    Ok(out)
}

/// Closed form for the determinant of the Jacobian of the transition
/// `phi_{J,m} o phi_{I,l}^{-1}` at a common point:
/// `(-1)^(l+m) * (w_I / w_J)^n * (z_{i_l} / z_{j_m})^2`.
pub fn transition_jacobian(c1: &ChartId, c2: &ChartId, pl: &PointedLine) -> Result<FieldElement> {
    if !chart_membership(pl, c1) {
        return Err(Error::NotInChart(c1.to_string()));
    }
    if !chart_membership(pl, c2) {
        return Err(Error::NotInChart(c2.to_string()));
    }
    let n = pl.n();
    let w_ratio = pl
        .minor(c1.i1, c1.i2)
        .div(&pl.minor(c2.i1, c2.i2))
        .expect("membership guarantees unit minors");
    let z_ratio = pl
        .marked_coord(c1.marked_column())
        .div(&pl.marked_coord(c2.marked_column()))
        .expect("membership guarantees unit marked coordinates");
    let value = w_ratio.pow(n as u64).mul(&z_ratio.pow(2));
    if (c1.ell + c2.ell) % 2 == 1 {
        Ok(value.neg())
    } else {
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn f101() -> FieldRef {
        FieldDescriptor::prime(101).unwrap()
    }

    fn elem(f: &FieldRef, n: i64) -> FieldElement {
        FieldElement::from_integer(f, n)
    }

    fn random_member(
        field: &FieldRef,
        n: usize,
        chart: &ChartId,
        rng: &mut ChaCha12Rng,
    ) -> PointedLine {
        let p = field.characteristic();
        loop {
            let rows = [
                (0..=n)
                    .map(|_| elem(field, rng.gen_range(0..p) as i64))
                    .collect::<Vec<_>>(),
                (0..=n)
                    .map(|_| elem(field, rng.gen_range(0..p) as i64))
                    .collect::<Vec<_>>(),
            ];
            let y = (
                elem(field, rng.gen_range(0..p) as i64),
                elem(field, rng.gen_range(0..p) as i64),
            );
            if let Ok(pl) = PointedLine::new(rows, y) {
                if chart_membership(&pl, chart) {
                    return pl;
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let f = f101();
        let rows = [
            vec![elem(&f, 1), elem(&f, 0), elem(&f, 0)],
            vec![elem(&f, 0), elem(&f, 1), elem(&f, 0)],
        ];
        let pl = PointedLine::new(rows, (elem(&f, 1), elem(&f, 0))).unwrap();
        assert!(chart_membership(&pl, &ChartId::new(1, 2, 1).unwrap()));
        // marked point has z_2 = 0
        assert!(!chart_membership(&pl, &ChartId::new(1, 2, 2).unwrap()));
        // the line spans columns 1,2 only: minor (1,3) vanishes
        assert!(!chart_membership(&pl, &ChartId::new(1, 3, 1).unwrap()));
        assert!(!chart_membership(&pl, &ChartId::new(1, 3, 2).unwrap()));
    }

    #[test]
    fn generic_line_lies_in_some_chart() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let any_chart = ChartId::new(1, 2, 1).unwrap();
        for _ in 0..50 {
            let pl = random_member(&f, 3, &any_chart, &mut rng);
            assert!(ChartId::all(3).iter().any(|c| chart_membership(&pl, c)));
        }
    }

    #[test]
    fn identity_rows_chart_coordinates() {
        let f = f101();
        let rows = [
            vec![elem(&f, 1), elem(&f, 0), elem(&f, 0)],
            vec![elem(&f, 0), elem(&f, 1), elem(&f, 0)],
        ];
        let pl = PointedLine::new(rows, (elem(&f, 1), elem(&f, 1))).unwrap();
        let cp = to_chart(&pl, &ChartId::new(1, 2, 2).unwrap()).unwrap();
        assert!(cp.grassmann_coords().iter().all(|x| x.is_zero()));
        assert!(cp.fiber_coord().is_one());
    }

    #[test]
    fn round_trip_through_charts() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for n in [2usize, 3] {
            for chart in ChartId::all(n) {
                for _ in 0..20 {
                    let pl = random_member(&f, n, &chart, &mut rng);
                    let cp = to_chart(&pl, &chart).unwrap();
                    let back = from_chart(&cp);
                    let cp2 = to_chart(&back, &chart).unwrap();
                    assert_eq!(cp, cp2);
                }
            }
        }
    }

    #[test]
    fn projective_invariance_of_chart_coordinates() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let chart = ChartId::new(2, 3, 1).unwrap();
        for _ in 0..20 {
            let pl = random_member(&f, 2, &chart, &mut rng);
            let lambda = elem(&f, rng.gen_range(1..101) as i64);
            let mu = elem(&f, rng.gen_range(1..101) as i64);
            let scaled = PointedLine::new(
                [
                    pl.rows()[0].iter().map(|x| x.mul(&lambda)).collect(),
                    pl.rows()[1].iter().map(|x| x.mul(&mu)).collect(),
                ],
                (
                    pl.point_coeffs().0.div(&lambda).unwrap(),
                    pl.point_coeffs().1.div(&mu).unwrap(),
                ),
            )
            .unwrap();
            assert_eq!(to_chart(&pl, &chart).unwrap(), to_chart(&scaled, &chart).unwrap());
        }
    }

    #[test]
    fn paper_chart_formulas_for_distinguished_chart() {
        // n = 2, chart ((2,3), 2): x_{1,1}, x_{2,1}, y against the raw data
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let chart = ChartId::new(2, 3, 2).unwrap();
        for _ in 0..30 {
            let pl = random_member(&f, 2, &chart, &mut rng);
            let a = &pl.rows()[0];
            let b = &pl.rows()[1];
            let det = a[1].mul(&b[2]).sub(&a[2].mul(&b[1]));
            let x11 = a[0].mul(&b[2]).sub(&b[0].mul(&a[2])).div(&det).unwrap();
            let x21 = b[0].mul(&a[1]).sub(&a[0].mul(&b[1])).div(&det).unwrap();
            let (y1, y2) = pl.point_coeffs();
            let zn = y1.mul(&a[1]).add(&y2.mul(&b[1]));
            let znp1 = y1.mul(&a[2]).add(&y2.mul(&b[2]));
            let y = zn.div(&znp1).unwrap();
            let cp = to_chart(&pl, &chart).unwrap();
            assert_eq!(cp.coords(), &[x11, x21, y][..]);
        }
    }

    #[test]
    fn beta_in_distinguished_chart() {
        let f = f101();
        let chart = ChartId::new(2, 3, 2).unwrap();
        let cp = ChartPoint::new(chart, 2, vec![elem(&f, 0), elem(&f, 0), elem(&f, 0)]).unwrap();
        assert_eq!(beta_chart(&cp).unwrap(), vec![elem(&f, 0), elem(&f, 0)]);
        let cp = ChartPoint::new(chart, 2, vec![elem(&f, 1), elem(&f, 1), elem(&f, 1)]).unwrap();
        assert_eq!(beta_chart(&cp).unwrap(), vec![elem(&f, 2), elem(&f, 1)]);
        // n = 3: (a y + b, c y + d, y)
        let chart3 = ChartId::new(3, 4, 2).unwrap();
        let coords: Vec<FieldElement> = [2, 3, 4, 5, 7].iter().map(|&k| elem(&f, k)).collect();
        let cp = ChartPoint::new(chart3, 3, coords).unwrap();
        assert_eq!(
            beta_chart(&cp).unwrap(),
            vec![elem(&f, 2 * 7 + 3), elem(&f, 4 * 7 + 5), elem(&f, 7)]
        );
        // matches beta on the underlying pointed line
        let pl = from_chart(&cp);
        let hom = pl.beta_point();
        let last = hom[3].clone();
        let affine: Vec<FieldElement> = hom[..3]
            .iter()
            .map(|x| x.div(&last).unwrap())
            .collect();
        assert_eq!(beta_chart(&cp).unwrap(), affine);
    }

    #[test]
    fn beta_pullback_examples() {
        let f = f101();
        // F = x2 (the z_3 coordinate, n = 2) pulls back to 1
        let form = MultiPoly::parse(&f, 3, "x2").unwrap();
        assert_eq!(
            beta_pullback(&form, 2).unwrap(),
            MultiPoly::from_int(&f, &chart_vars(2), 1)
        );
        // F = x1 (the z_2 coordinate) pulls back to y
        let form = MultiPoly::parse(&f, 3, "x1").unwrap();
        assert_eq!(
            beta_pullback(&form, 2).unwrap(),
            MultiPoly::var(&f, &chart_vars(2), 2)
        );
        // Fermat cubic: (a1 y + b1)^3 + y^3 + 1
        let fermat = MultiPoly::parse(&f, 3, "x0^3+x1^3+x2^3").unwrap();
        let vars = chart_vars(2);
        let a1 = MultiPoly::var(&f, &vars, 0);
        let b1 = MultiPoly::var(&f, &vars, 1);
        let y = MultiPoly::var(&f, &vars, 2);
        let expect = a1
            .mul(&y)
            .add(&b1)
            .pow(3)
            .add(&y.pow(3))
            .add(&MultiPoly::from_int(&f, &vars, 1));
        assert_eq!(beta_pullback(&fermat, 2).unwrap(), expect);
        let bad = MultiPoly::parse(&f, 3, "x0^2 + x1").unwrap();
        assert!(beta_pullback(&bad, 2).is_err());
    }

    #[test]
    fn transition_identity_on_same_chart() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let chart = ChartId::new(1, 3, 2).unwrap();
        let pl = random_member(&f, 2, &chart, &mut rng);
        assert!(transition_jacobian(&chart, &chart, &pl).unwrap().is_one());
    }

    #[test]
    fn transition_cocycle() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in [2usize, 3] {
            let charts = ChartId::all(n);
            let mut done = 0;
            'outer: for c1 in &charts {
                for c2 in &charts {
                    for c3 in &charts {
                        let pl = random_member(&f, n, c1, &mut rng);
                        if !chart_membership(&pl, c2) || !chart_membership(&pl, c3) {
                            continue;
                        }
                        let j13 = transition_jacobian(c1, c3, &pl).unwrap();
                        let j12 = transition_jacobian(c1, c2, &pl).unwrap();
                        let j23 = transition_jacobian(c2, c3, &pl).unwrap();
                        assert_eq!(j13, j12.mul(&j23));
                        done += 1;
                        if done > 40 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chart_dimension_is_2n_minus_1() {
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for n in [2usize, 3, 4] {
            let chart = ChartId::new(1, 2, 1).unwrap();
            let pl = random_member(&f, n, &chart, &mut rng);
            let cp = to_chart(&pl, &chart).unwrap();
            assert_eq!(cp.coords().len(), 2 * n - 1);
        }
    }
}
