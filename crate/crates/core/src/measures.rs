//! Finite atomic measures in the plane and the distances used to compare
//! them: angular discrepancy about a center, radial order statistics and the
//! Wasserstein-1 distance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::RootSet;

/// Atoms closer than this are merged when a measure is built from roots.
pub const MERGE_RADIUS: f64 = 1e-9;

/// Atom count used to stand in for the uniform measure on a circle.
pub const CIRCLE_ATOMS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub re: f64,
    pub im: f64,
    pub w: f64,
}

impl Atom {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    pub atoms: Vec<Atom>,
}

impl EmpiricalMeasure {
    /// Positive finite weights at finite points.
    pub fn new(points: &[Complex64], weights: &[f64]) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidArgument("points and weights differ in length".into()));
        }
        if points.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::OutOfRange("atom outside the double-precision range".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument("weights must be positive and finite".into()));
        }
        let atoms = points.iter().zip(weights).map(|(z, &w)| Atom { re: z.re, im: z.im, w }).collect();
        Ok(EmpiricalMeasure { atoms })
    }

    /// Equal weights `1 / len`.
    pub fn uniform(points: &[Complex64]) -> Result<Self> {
        let w = vec![1.0 / points.len() as f64; points.len()];
        Self::new(points, &w)
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms with `r1 <= |z - center| <= r2`.
    pub fn restrict_annulus(&self, center: Complex64, r1: f64, r2: f64) -> Self {
        let atoms = self
            .atoms
            .iter()
            .filter(|a| {
                let r = (a.z() - center).norm();
                r1 <= r && r <= r2
            })
            .copied()
            .collect();
        EmpiricalMeasure { atoms }
    }

    /// Merges atoms within `radius` of each other (transitively) into one
    /// atom at their weighted mean.
    pub fn merged(&self, radius: f64) -> Self {
        let n = self.atoms.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| self.atoms[i].re.total_cmp(&self.atoms[j].re));
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for a in 0..n {
            let i = order[a];
            for &j in &order[a + 1..] {
                if self.atoms[j].re - self.atoms[i].re > radius {
                    break;
                }
                if (self.atoms[i].z() - self.atoms[j].z()).norm() <= radius {
                    let (x, y) = (find(&mut parent, i), find(&mut parent, j));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut acc: Vec<Option<(Complex64, f64)>> = vec![None; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            let a = self.atoms[i];
            let e = acc[r].get_or_insert((Complex64::new(0.0, 0.0), 0.0));
            e.0 += a.z() * a.w;
            e.1 += a.w;
        }
        let atoms = acc
            .into_iter()
            .flatten()
            .map(|(s, w)| Atom { re: s.re / w, im: s.im / w, w })
            .collect();
        EmpiricalMeasure { atoms }
    }
}

/// Mass `1/degree` per root, zeros at the origin included, close atoms merged.
pub fn empirical(r: &RootSet) -> Result<EmpiricalMeasure> {
    if !r.converged {
        return Err(Error::Unconverged);
    }
    if r.degree == 0 {
        return Err(Error::InvalidArgument("no roots".into()));
    }
    let w = 1.0 / r.degree as f64;
    let mut points = r.points();
    let mut weights = vec![w; points.len()];
    if r.zeros_at_origin > 0 {
        points.push(Complex64::new(0.0, 0.0));
        weights.push(w * r.zeros_at_origin as f64);
    }
    Ok(EmpiricalMeasure::new(&points, &weights)?.merged(MERGE_RADIUS))
}

/// `n` equal atoms at `center + radius e^{2 pi i k / n}`.
pub fn uniform_circle(radius: f64, center: Complex64, n: usize) -> EmpiricalMeasure {
    let w = 1.0 / n as f64;
    let atoms = (0..n)
        .map(|k| {
            let z = center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64);
            Atom { re: z.re, im: z.im, w }
        })
        .collect();
    EmpiricalMeasure { atoms }
}

/// `sup` over arcs `I` of `|mu(I)/|mu| - |I|/2pi|`, seen from `center`.
///
/// With angles `x_i` in `[0, 1)` sorted and `F_i`, `G_i` the normalized mass
/// strictly before and up to atom `i`, the supremum over all arcs is
/// `max_i (G_i - x_i) + max_i (x_i - F_i)`.
pub fn angular_discrepancy(m: &EmpiricalMeasure, center: Complex64) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::InvalidArgument("empty measure".into()));
    }
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(m.len());
    for a in &m.atoms {
        let d = a.z() - center;
        if d.re == 0.0 && d.im == 0.0 {
            return Err(Error::AtomAtCenter);
        }
        let x = (d.arg() / std::f64::consts::TAU).rem_euclid(1.0);
        pts.push((if x >= 1.0 { 0.0 } else { x }, a.w));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total = m.total_mass();
    let mut before = 0.0;
    let mut over = f64::NEG_INFINITY;
    let mut under = f64::NEG_INFINITY;
    for &(x, w) in &pts {
        under = under.max(x - before / total);
        before += w;
        over = over.max(before / total - x);
    }
    Ok(over + under)
}

/// Smallest radius `r` with `mu(|z - center| <= r) >= p |mu|`.
pub fn radial_quantile(m: &EmpiricalMeasure, center: Complex64, p: f64) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::InvalidArgument("empty measure".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("quantile level {p} outside [0, 1]")));
    }
    let mut r: Vec<(f64, f64)> = m.atoms.iter().map(|a| ((a.z() - center).norm(), a.w)).collect();
    r.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total = m.total_mass();
    let target = p * total - 1e-12 * total;
    let mut acc = 0.0;
    for &(rad, w) in &r {
        acc += w;
        if acc >= target {
            return Ok(rad);
        }
    }
    Ok(r.last().unwrap().0)
}

/// `mu(r1 <= |z - center| <= r2)`.
pub fn annulus_mass(m: &EmpiricalMeasure, center: Complex64, r1: f64, r2: f64) -> f64 {
    m.restrict_annulus(center, r1, r2).total_mass()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialStats {
    /// `(level, radius)` pairs, lower-quantile convention.
    pub quantiles: Vec<(f64, f64)>,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

pub const QUANTILE_LEVELS: [f64; 7] = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];

pub fn radial_stats(m: &EmpiricalMeasure, center: Complex64) -> Result<RadialStats> {
    let quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&p| radial_quantile(m, center, p).map(|r| (p, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialStats { median: quantiles[3].1, min: quantiles[0].1, max: quantiles[6].1, quantiles })
}

/// Largest `N * M` accepted by [`wasserstein1`].
pub const MAX_TRANSPORT_PAIRS: usize = 1_000_000;

/// Exact Wasserstein-1 distance with Euclidean ground cost.
///
/// Transportation problem solved by successive shortest paths on the
/// residual bipartite graph, Dijkstra with Johnson potentials on the dense
/// graph. Each augmentation empties a supply, fills a demand or cancels a
/// shipment, so the loop is finite; the result is deterministic.
pub fn wasserstein1(m1: &EmpiricalMeasure, m2: &EmpiricalMeasure) -> Result<f64> {
    let (n, m) = (m1.len(), m2.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("empty measure".into()));
    }
    if n.saturating_mul(m) > MAX_TRANSPORT_PAIRS {
        return Err(Error::TooLarge(format!("{n} x {m} transport problem")));
    }
    let (t1, t2) = (m1.total_mass(), m2.total_mass());
    if (t1 - t2).abs() > 1e-12 * t1.max(t2).max(1.0) {
        return Err(Error::UnequalMass(t1, t2));
    }
    let cost: Vec<f64> = m1
        .atoms
        .iter()
        .flat_map(|a| m2.atoms.iter().map(move |b| (a.z() - b.z()).norm()))
        .collect();
    if m == 1 || n == 1 {
        let w = if m == 1 { &m1.atoms } else { &m2.atoms };
        return Ok(w.iter().zip(&cost).map(|(a, c)| a.w * c).sum());
    }

    let eps = 1e-15 * t1.max(t2);
    let mut supply: Vec<f64> = m1.atoms.iter().map(|a| a.w).collect();
    let mut demand: Vec<f64> = m2.atoms.iter().map(|a| a.w).collect();
    let mut flow = vec![0.0; n * m];
    // node order: sources 0..n, sinks n..n+m, terminal n+m
    let nodes = n + m + 1;
    let sink = n + m;
    let mut pot = vec![0.0; nodes];
    let mut dist = vec![0.0; nodes];
    let mut prev = vec![usize::MAX; nodes];
    let mut seen = vec![false; nodes];
    let mut shipped = 0.0;
    let target = t1.min(t2) - eps * (n + m) as f64;

    while shipped < target {
        dist.fill(f64::INFINITY);
        prev.fill(usize::MAX);
        seen.fill(false);
        for i in 0..n {
            if supply[i] > eps {
                dist[i] = 0.0;
            }
        }
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for v in 0..nodes {
                if !seen[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX || u == sink {
                break;
            }
            seen[u] = true;
            if u < n {
                for j in 0..m {
                    let v = n + j;
                    let rc = (cost[u * m + j] + pot[u] - pot[v]).max(0.0);
                    if best + rc < dist[v] {
                        dist[v] = best + rc;
                        prev[v] = u;
                    }
                }
            } else {
                let j = u - n;
                if demand[j] > eps {
                    let rc = (pot[u] - pot[sink]).max(0.0);
                    if best + rc < dist[sink] {
                        dist[sink] = best + rc;
                        prev[sink] = u;
                    }
                }
                for i in 0..n {
                    if flow[i * m + j] > eps {
                        let rc = (-cost[i * m + j] + pot[u] - pot[i]).max(0.0);
                        if best + rc < dist[i] {
                            dist[i] = best + rc;
                            prev[i] = u;
                        }
                    }
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        let dt = dist[sink];
        for v in 0..nodes {
            pot[v] += dist[v].min(dt);
        }
        // walk back: sink <- j <- i (<- j' <- i' ...)
        let last = prev[sink];
        let mut amount = demand[last - n];
        let mut v = last;
        loop {
            let i = prev[v];
            if prev[i] == usize::MAX {
                amount = amount.min(supply[i]);
                break;
            }
            let jj = prev[i] - n;
            amount = amount.min(flow[i * m + jj]);
            v = prev[i];
        }
        let mut v = last;
        demand[last - n] -= amount;
        loop {
            let i = prev[v];
            let j = v - n;
            flow[i * m + j] += amount;
            if prev[i] == usize::MAX {
                supply[i] -= amount;
                break;
            }
            let jj = prev[i] - n;
            flow[i * m + jj] -= amount;
            v = prev[i];
        }
        shipped += amount;
    }
    Ok(flow.iter().zip(&cost).map(|(f, c)| f.max(0.0) * c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots_of_unity(n: usize) -> EmpiricalMeasure {
        uniform_circle(1.0, c(0.0, 0.0), n)
    }

    #[test]
    fn discrepancy_of_roots_of_unity() {
        for n in [1, 2, 3, 7, 64] {
            let d = angular_discrepancy(&roots_of_unity(n), c(0.0, 0.0)).unwrap();
            assert!((d - 1.0 / n as f64).abs() < 1e-14, "n={n} d={d}");
        }
    }

    #[test]
    fn discrepancy_degenerate_and_pair() {
        let m = EmpiricalMeasure::uniform(&[c(1.0, 0.0); 5]).unwrap();
        assert!((angular_discrepancy(&m, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let m = EmpiricalMeasure::uniform(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((angular_discrepancy(&m, c(0.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        let m = EmpiricalMeasure::uniform(&[c(0.0, 0.0)]).unwrap();
        assert_eq!(angular_discrepancy(&m, c(0.0, 0.0)).unwrap_err(), Error::AtomAtCenter);
    }

    #[test]
    fn radial_conventions() {
        let s = radial_stats(&roots_of_unity(6), c(0.0, 0.0)).unwrap();
        assert!(s.quantiles.iter().all(|&(_, r)| (r - 1.0).abs() < 1e-15));
        let m = EmpiricalMeasure::uniform(&[c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(radial_quantile(&m, c(0.0, 0.0), 0.5).unwrap(), 0.0);
        assert_eq!(annulus_mass(&m, c(0.0, 0.0), 1.0, 3.0), 0.5);
    }

    #[test]
    fn w1_examples() {
        let d0 = EmpiricalMeasure::uniform(&[c(0.0, 0.0)]).unwrap();
        let d1 = EmpiricalMeasure::uniform(&[c(1.0, 0.0)]).unwrap();
        assert_eq!(wasserstein1(&d0, &d1).unwrap(), 1.0);
        let u = roots_of_unity(9);
        assert!(wasserstein1(&u, &u).unwrap().abs() < 1e-15);
        assert!((wasserstein1(&u, &d0).unwrap() - 1.0).abs() < 1e-15);
        let half = EmpiricalMeasure::new(&[c(0.0, 0.0)], &[0.5]).unwrap();
        assert!(matches!(wasserstein1(&half, &d1), Err(Error::UnequalMass(..))));
    }

    #[test]
    fn w1_needs_rerouting() {
        // greedy nearest matching is not optimal here
        let a = EmpiricalMeasure::uniform(&[c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let b = EmpiricalMeasure::uniform(&[c(1.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!((wasserstein1(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        let a = EmpiricalMeasure::uniform(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let b = EmpiricalMeasure::uniform(&[c(0.0, 0.0), c(1.5, 0.0)]).unwrap();
        // sorted matching on the line: |1 - 0| + |2 - 1.5|
        assert!((wasserstein1(&a, &b).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn w1_unequal_counts_on_line() {
        // on the real line W1 is the L1 distance between distribution functions
        let a = EmpiricalMeasure::uniform(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let b = EmpiricalMeasure::uniform(&[c(0.5, 0.0), c(1.5, 0.0)]).unwrap();
        // CDF difference: 1/3 on [0,.5), 1/6 on [.5,1), 1/6 on [1,1.5), 1/3 on [1.5,2)
        let want = 0.5 * (1.0 / 3.0 + 1.0 / 6.0 + 1.0 / 6.0 + 1.0 / 3.0);
        assert!((wasserstein1(&a, &b).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn merge_and_json() {
        let m = EmpiricalMeasure::uniform(&[c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(-2.0, 0.0)]).unwrap();
        let mm = m.merged(MERGE_RADIUS);
        assert_eq!(mm.len(), 2);
        assert!((mm.total_mass() - 1.0).abs() < 1e-15);
        let s = serde_json::to_string(&EmpiricalMeasure::new(&[c(1.0, -1.0)], &[1.0]).unwrap()).unwrap();
        assert_eq!(s, r#"{"atoms":[{"re":1.0,"im":-1.0,"w":1.0}]}"#);
    }
}
