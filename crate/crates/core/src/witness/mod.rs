//! Witness boxes certifying `D*_n >= d/(12n)`.
//!
//! [`theorem1_witness`] turns the constructive lower-bound argument into an
//! algorithm: it splits the points by how many coordinates exceed the
//! threshold `κ = (1 - 25d/n)^{1/d}`, picks the applicable case and returns
//! the box (or boxes) the argument exhibits, together with the local
//! discrepancy actually measured there.
//!
//! Every `measured` value is the local discrepancy at a concrete box, hence a
//! true lower bound on the star discrepancy whether or not the guarantee
//! applies.

mod inequalities;

pub use inequalities::{
    bernoulli_gap, case3_rational, case3_rational_exact, check_bernoulli_inequality, check_case3_rational,
    inverse_discrepancy_lower_bound, BernoulliReport, RationalReport,
};

use num_rational::Ratio;

use crate::discrepancy::star_discrepancy_exact;
use crate::error::{Error, Result};
use crate::geometry::{AnchoredBox, LocalDiscrepancy, PointSet, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// Best box of the first-coordinate projection, lifted to `d` dimensions.
    Trivial1d,
    /// Two nested boxes that contain the same points.
    SimpleDisjoint,
    /// One box with `d` points on its right-upper boundary.
    SimpleBoundary,
    Case1,
    Case2,
    Case3,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Trivial1d => "trivial_1d",
            CaseLabel::SimpleDisjoint => "simple_disjoint",
            CaseLabel::SimpleBoundary => "simple_boundary",
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3 => "case3",
        }
    }
}

/// Points split by the number of coordinates above `kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaPartition {
    pub kappa: f64,
    /// No coordinate above `kappa`.
    pub p0: Vec<usize>,
    /// Exactly one coordinate above `kappa`.
    pub p1: Vec<usize>,
    /// Two or more coordinates above `kappa`.
    pub p2: Vec<usize>,
    /// For every point, the axes where it exceeds `kappa` (ascending).
    pub large_coords: Vec<Vec<usize>>,
    /// Axes carrying the large coordinate of some `p1` point (ascending).
    pub c_set: Vec<usize>,
}

/// Threshold `(1 - 25d/n)^{1/d}`; requires `n > 25d`.
pub fn kappa(n: usize, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if n <= 25 * d {
        return Err(Error::Precondition(format!("kappa needs n > 25d (n = {n}, d = {d})")));
    }
    Ok((1.0 - 25.0 * d as f64 / n as f64).powf(1.0 / d as f64))
}

pub fn partition_kappa(ps: &PointSet) -> Result<KappaPartition> {
    Ok(partition_at(ps, kappa(ps.len(), ps.dim())?))
}

/// Partition with an explicit threshold.
pub fn partition_at(ps: &PointSet, kappa: f64) -> KappaPartition {
    let large_coords: Vec<Vec<usize>> =
        ps.points().map(|p| p.iter().enumerate().filter(|(_, &x)| x > kappa).map(|(j, _)| j).collect()).collect();
    let (mut p0, mut p1, mut p2) = (Vec::new(), Vec::new(), Vec::new());
    let mut in_c = vec![false; ps.dim()];
    for (k, large) in large_coords.iter().enumerate() {
        match large.len() {
            0 => p0.push(k),
            1 => {
                in_c[large[0]] = true;
                p1.push(k);
            }
            _ => p2.push(k),
        }
    }
    let c_set = (0..ps.dim()).filter(|&j| in_c[j]).collect();
    KappaPartition { kappa, p0, p1, p2, large_coords, c_set }
}

/// One removal step of the corner-point argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Case3Step {
    /// Axis `j_k` added to the set of capped axes.
    pub axis: usize,
    /// Size of the remaining pool `S_{k-1}` before this step.
    pub pool_before: usize,
    /// Points of the pool with coordinate `axis` above kappa.
    pub removed: Vec<usize>,
}

impl Case3Step {
    pub fn removed_count(&self) -> usize {
        self.removed.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case3Trace {
    /// `|p2|`.
    pub m_big: usize,
    pub steps: Vec<Case3Step>,
    /// Number of steps, `ceil(d/7)`.
    pub k: usize,
    /// `k/d`.
    pub q: Ratio<usize>,
    /// Capped axes after the last step, in selection order.
    pub capped_axes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate {
    pub case: CaseLabel,
    pub boxes: Vec<AnchoredBox>,
    pub best: AnchoredBox,
    pub measured: f64,
    pub side: Side,
    pub guaranteed: f64,
    pub guarantee_valid: bool,
    pub partition: Option<KappaPartition>,
    pub trace: Option<Case3Trace>,
}

impl WitnessCertificate {
    /// Margin of the measured value over the guaranteed bound.
    pub fn margin(&self) -> f64 {
        self.measured - self.guaranteed
    }

    fn from_candidates(ps: &PointSet, case: CaseLabel, boxes: Vec<AnchoredBox>, guaranteed: f64) -> Result<Self> {
        let mut best: Option<LocalDiscrepancy> = None;
        for b in &boxes {
            let ld = ps.local_disc(b)?;
            if best.as_ref().is_none_or(|cur| ld.value > cur.value) {
                best = Some(ld);
            }
        }
        let best = best.expect("at least one candidate box");
        Ok(Self {
            case,
            boxes,
            best: best.corner,
            measured: best.value,
            side: best.side,
            guaranteed,
            guarantee_valid: false,
            partition: None,
            trace: None,
        })
    }
}

/// The nested-box / boundary argument with the fixed threshold `1 - 1/d`,
/// which certifies the bound with a large constant once `n >= 2 e d^2`.
///
/// Returns an error for `d = 1`. Below `2 e d^2` points the boxes are still
/// built but `guarantee_valid` is false.
pub fn simple_witness(ps: &PointSet) -> Result<WitnessCertificate> {
    let d = ps.dim();
    let n = ps.len();
    if d < 2 {
        return Err(Error::Precondition("the nested-box argument needs d >= 2".into()));
    }
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let threshold = 1.0 - 1.0 / d as f64;

    // For each axis j, the qualifying point (above threshold on j only) with
    // the largest j-th coordinate, smallest index on ties.
    let mut picks: Vec<Option<usize>> = vec![None; d];
    for (k, p) in ps.points().enumerate() {
        let mut above = p.iter().enumerate().filter(|(_, &x)| x > threshold);
        if let (Some((j, &x)), None) = (above.next(), above.next()) {
            if picks[j].is_none_or(|cur| x > ps.point(cur)[j]) {
                picks[j] = Some(k);
            }
        }
    }

    let mut cert = match picks.iter().position(Option::is_none) {
        None => {
            let corner = picks.iter().enumerate().map(|(j, k)| ps.point(k.unwrap())[j]).collect();
            let b = AnchoredBox::new(corner)?;
            WitnessCertificate::from_candidates(ps, CaseLabel::SimpleBoundary, vec![b], d as f64 / (2.0 * n as f64))?
        }
        Some(axis) => {
            let mut wide = vec![threshold; d];
            wide[axis] = 1.0;
            let boxes = vec![AnchoredBox::new(wide)?, AnchoredBox::new(vec![threshold; d])?];
            WitnessCertificate::from_candidates(ps, CaseLabel::SimpleDisjoint, boxes, d as f64 / n as f64)?
        }
    };
    cert.guarantee_valid = n as f64 >= 2.0 * std::f64::consts::E * (d * d) as f64;
    Ok(cert)
}

/// Certificate for `D*_n >= d/(12n)`.
///
/// Dimensions up to 6 (and sets too small for kappa to exist) use the best
/// box of the first-coordinate projection, worth at least `1/(2n)`. Larger
/// dimensions run the kappa case analysis. The guarantee is flagged valid iff
/// `n >= 250 d`.
pub fn theorem1_witness(ps: &PointSet) -> Result<WitnessCertificate> {
    let d = ps.dim();
    let n = ps.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut cert = if d <= 6 || n <= 25 * d { projection_witness(ps)? } else { kappa_cases(ps)? };
    cert.guarantee_valid = n >= 250 * d;
    Ok(cert)
}

/// The kappa case analysis run for any dimension, without the small-`d`
/// shortcut of [`theorem1_witness`].
///
/// The guarantee is flagged valid when `n >= 250 d` and the selected case's
/// argument applies: always for cases 1 and 2, and for case 3 only when
/// `1/7 <= ceil(d/7)/d <= 1/4`, which holds for every `d >= 4`.
pub fn kappa_witness(ps: &PointSet) -> Result<WitnessCertificate> {
    let d = ps.dim();
    let n = ps.len();
    let mut cert = kappa_cases(ps)?;
    let case_ok = match &cert.trace {
        Some(t) => 7 * t.k >= d && 4 * t.k <= d,
        None => true,
    };
    cert.guarantee_valid = n >= 250 * d && case_ok;
    Ok(cert)
}

fn guaranteed_bound(n: usize, d: usize) -> f64 {
    d as f64 / (12.0 * n as f64)
}

fn projection_witness(ps: &PointSet) -> Result<WitnessCertificate> {
    let d = ps.dim();
    let line = ps.project(&[0])?;
    let best = star_discrepancy_exact(&line)?;
    let mut corner = vec![1.0; d];
    corner[0] = best.witness.upper()[0];
    let b = AnchoredBox::new(corner)?;
    WitnessCertificate::from_candidates(ps, CaseLabel::Trivial1d, vec![b], guaranteed_bound(ps.len(), d))
}

fn kappa_cases(ps: &PointSet) -> Result<WitnessCertificate> {
    let d = ps.dim();
    let n = ps.len();
    let part = partition_kappa(ps)?;
    let k_val = part.kappa;
    let guaranteed = guaranteed_bound(n, d);

    let mut cert = if 6 * part.c_set.len() >= d {
        // Each p1 point has a single large coordinate, so the largest one per
        // axis in C sits on a distinct face of this box.
        let mut corner = vec![k_val; d];
        for &k in &part.p1 {
            let j = part.large_coords[k][0];
            corner[j] = corner[j].max(ps.point(k)[j]);
        }
        WitnessCertificate::from_candidates(ps, CaseLabel::Case1, vec![AnchoredBox::new(corner)?], guaranteed)?
    } else if 24 * part.p1.len() >= 107 * d {
        let b = capped_box(d, &part.c_set, k_val)?;
        WitnessCertificate::from_candidates(ps, CaseLabel::Case2, vec![b], guaranteed)?
    } else {
        let trace = case3_trace(&part, d);
        let boxes = vec![AnchoredBox::new(vec![k_val; d])?, capped_box(d, &trace.capped_axes, k_val)?];
        let mut c = WitnessCertificate::from_candidates(ps, CaseLabel::Case3, boxes, guaranteed)?;
        c.trace = Some(trace);
        c
    };
    cert.partition = Some(part);
    Ok(cert)
}

/// `[0, kappa]` on `axes`, `[0, 1]` elsewhere.
fn capped_box(d: usize, axes: &[usize], kappa: f64) -> Result<AnchoredBox> {
    let mut corner = vec![1.0; d];
    for &j in axes {
        corner[j] = kappa;
    }
    AnchoredBox::new(corner)
}

/// Greedy removal: at each of `ceil(d/7)` steps cap the unused axis on which
/// the most remaining `p2` points exceed kappa (smallest axis on ties).
fn case3_trace(part: &KappaPartition, d: usize) -> Case3Trace {
    let k = d.div_ceil(7);
    let mut pool = part.p2.clone();
    let mut used = vec![false; d];
    let mut steps = Vec::with_capacity(k);
    let mut capped_axes = Vec::with_capacity(k);

    for _ in 0..k {
        let mut counts = vec![0usize; d];
        for &p in &pool {
            for &j in &part.large_coords[p] {
                counts[j] += 1;
            }
        }
        // Pool points never exceed kappa on a capped axis, so used axes count 0;
        // with an empty pool this picks the smallest unused axis.
        let axis = (0..d)
            .filter(|&j| !used[j])
            .fold(None, |best: Option<usize>, j| match best {
                Some(b) if counts[b] >= counts[j] => Some(b),
                _ => Some(j),
            })
            .expect("k <= d leaves an unused axis");
        used[axis] = true;
        capped_axes.push(axis);
        let pool_before = pool.len();
        let (removed, kept): (Vec<usize>, Vec<usize>) =
            pool.into_iter().partition(|&p| part.large_coords[p].contains(&axis));
        pool = kept;
        steps.push(Case3Step { axis, pool_before, removed });
    }

    Case3Trace { m_big: part.p2.len(), steps, k, q: Ratio::new(k, d), capped_axes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_random};

    fn with_points(d: usize, mut pts: Vec<Vec<f64>>, n: usize, filler: f64) -> PointSet {
        while pts.len() < n {
            pts.push(vec![filler; d]);
        }
        PointSet::new(d, pts).unwrap()
    }

    #[test]
    fn kappa_values() {
        assert!((kappa(250, 1).unwrap() - 0.9).abs() < 1e-15);
        assert!((kappa(500, 2).unwrap() - 0.9f64.sqrt()).abs() < 1e-15);
        assert!(kappa(50, 2).is_err());
        assert!(kappa(51, 2).is_ok());
    }

    #[test]
    fn partition_examples() {
        let ps = with_points(2, vec![vec![0.99, 0.1], vec![0.99, 0.99]], 500, 0.5);
        let part = partition_kappa(&ps).unwrap();
        assert!(part.p1.contains(&0));
        assert_eq!(part.large_coords[0], vec![0]);
        assert_eq!(part.c_set, vec![0]);
        assert!(part.p2.contains(&1));
        assert_eq!(part.p0.len(), 498);
    }

    #[test]
    fn simple_disjoint_when_an_axis_has_no_qualifier() {
        let pts = (0..30).map(|k| vec![0.5 * k as f64 / 30.0, 0.25]).collect();
        let ps = PointSet::new(2, pts).unwrap();
        let c = simple_witness(&ps).unwrap();
        assert_eq!(c.case, CaseLabel::SimpleDisjoint);
        assert!(c.guarantee_valid);
        assert!(c.measured >= 0.5);
        assert_eq!(c.boxes[0].upper(), &[1.0, 0.5]);
        assert!(c.measured >= c.guaranteed);
    }

    #[test]
    fn simple_boundary_picks_the_face_points() {
        let mut pts = vec![vec![0.9, 0.1], vec![0.1, 0.9]];
        pts.extend((0..28).map(|k| vec![0.01 * k as f64, 0.4]));
        let ps = PointSet::new(2, pts).unwrap();
        let c = simple_witness(&ps).unwrap();
        assert_eq!(c.case, CaseLabel::SimpleBoundary);
        assert_eq!(c.best.upper(), &[0.9, 0.9]);
        assert_eq!(ps.boundary_count(&c.best).unwrap(), 2);
        assert!(c.measured >= 1.0 / 30.0);
        assert!(simple_witness(&gen_chain(5, 1).unwrap()).is_err());
        // Too few points for the guarantee.
        assert!(!simple_witness(&gen_chain(5, 2).unwrap()).unwrap().guarantee_valid);
    }

    #[test]
    fn small_dimensions_use_the_projection() {
        let ps = gen_random(1500, 6, 3).unwrap();
        let c = theorem1_witness(&ps).unwrap();
        assert_eq!(c.case, CaseLabel::Trivial1d);
        assert!(c.guarantee_valid);
        assert!(c.measured >= 1.0 / 3000.0);
        assert_eq!(&c.best.upper()[1..], &[1.0; 5]);

        let small = gen_random(100, 2, 3).unwrap();
        let c = theorem1_witness(&small).unwrap();
        assert!(!c.guarantee_valid);
        assert!(c.measured > 0.0);
    }

    #[test]
    fn kappa_cases_in_the_plane() {
        let chain = PointSet::new(2, (1..=500).map(|k| vec![k as f64 / 501.0; 2]).collect()).unwrap();
        let c = kappa_witness(&chain).unwrap();
        assert_eq!(c.case, CaseLabel::Case3);
        let part = c.partition.as_ref().unwrap();
        assert!(part.p1.is_empty());
        assert!(c.measured >= 1.0 / 3000.0);
        // ceil(2/7)/2 = 1/2 lies outside [1/7, 1/4].
        assert!(!c.guarantee_valid);

        let ps = with_points(2, vec![vec![0.99, 0.1]], 500, 0.5);
        assert_eq!(kappa_witness(&ps).unwrap().case, CaseLabel::Case1);
    }

    #[test]
    fn cube_interior_points_go_to_case3() {
        let ps = with_points(3, vec![], 750, 0.5);
        let c = kappa_witness(&ps).unwrap();
        assert_eq!(c.case, CaseLabel::Case3);
        assert_eq!(c.boxes[0].upper(), &[c.partition.as_ref().unwrap().kappa; 3]);
        assert!(c.measured >= 0.1 - 1e-12);
        assert!(c.measured >= 3.0 / 9000.0);
    }

    #[test]
    fn case3_trace_invariants() {
        // d = 8, n = 2000: kappa^8 = 0.9. Corner points exceed kappa on two
        // or three axes each.
        let d = 8;
        let mut pts = Vec::new();
        for i in 0..120usize {
            let mut p = vec![0.3; d];
            p[i % d] = 0.999;
            p[(i * 3 + 1) % d] = 0.995;
            if i % 5 == 0 {
                p[(i + 4) % d] = 0.99;
            }
            pts.push(p);
        }
        let ps = with_points(d, pts, 2000, 0.3);
        let c = theorem1_witness(&ps).unwrap();
        assert_eq!(c.case, CaseLabel::Case3);
        assert!(c.guarantee_valid);
        assert!(c.measured >= c.guaranteed);
        let t = c.trace.as_ref().unwrap();
        assert_eq!(t.k, 2);
        assert_eq!(t.q, Ratio::new(1, 4));
        assert_eq!(t.m_big, 120);
        let mut seen = std::collections::HashSet::new();
        for s in &t.steps {
            assert!(s.removed_count() * d >= 2 * s.pool_before);
            for &r in &s.removed {
                assert!(seen.insert(r));
                assert!(ps.point(r)[s.axis] > c.partition.as_ref().unwrap().kappa);
            }
        }
        let axes: std::collections::HashSet<_> = t.capped_axes.iter().collect();
        assert_eq!(axes.len(), t.k);
    }

    #[test]
    fn case3_with_empty_pool_takes_smallest_axes() {
        let ps = with_points(14, vec![], 400, 0.2);
        let c = kappa_witness(&ps).unwrap();
        let t = c.trace.unwrap();
        assert_eq!(t.capped_axes, vec![0, 1]);
        assert!(t.steps.iter().all(|s| s.removed.is_empty()));
    }
}
