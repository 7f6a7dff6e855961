//! Discrete harmonic functions on the graphs `S_n`, built by the (2,2,1)/5 midpoint rule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::io::Write;

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_rational, Rational, Vec3Q};

pub const DEFAULT_GRID_CAP: u32 = 10;

/// Level cap from `HARMONIC_GRID_CAP`, falling back to [`DEFAULT_GRID_CAP`].
pub fn grid_cap_from_env() -> u32 {
    std::env::var("HARMONIC_GRID_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_GRID_CAP)
}

/// Values a harmonic function can take: anything closed under rational linear combinations.
pub trait HarmonicValue: Clone + PartialEq + Debug + Send + Sync {
    /// `Σ coeff_i · value_i / denom`.
    fn combine(terms: &[(i64, &Self)], denom: i64) -> Self;
    fn components(&self) -> Vec<Rational>;
}

impl HarmonicValue for Rational {
    fn combine(terms: &[(i64, &Self)], denom: i64) -> Self {
        let sum: Rational = terms.iter().map(|(c, v)| *v * Rational::from_integer(BigInt::from(*c))).sum();
        sum / Rational::from_integer(BigInt::from(denom))
    }

    fn components(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
}

impl HarmonicValue for Vec3Q {
    fn combine(terms: &[(i64, &Self)], denom: i64) -> Self {
        Vec3Q(std::array::from_fn(|i| {
            let parts: Vec<(i64, &Rational)> = terms.iter().map(|(c, v)| (*c, &v.0[i])).collect();
            Rational::combine(&parts, denom)
        }))
    }

    fn components(&self) -> Vec<Rational> {
        self.0.to_vec()
    }
}

/// Values at the corners `0`, `1`, `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTriple<V> {
    pub a: V,
    pub b: V,
    pub c: V,
}

impl<V> BoundaryTriple<V> {
    pub fn new(a: V, b: V, c: V) -> Self {
        BoundaryTriple { a, b, c }
    }
}

impl BoundaryTriple<Vec3Q> {
    /// `(e_0, e_1, e_ω)`: the boundary data of `u`.
    pub fn universal() -> Self {
        BoundaryTriple::new(Vec3Q::basis(0), Vec3Q::basis(1), Vec3Q::basis(2))
    }
}

/// Midpoint values of a triangle `(s, t, u)`: returns `(f((s+t)/2), f((s+u)/2), f((t+u)/2))`.
pub fn subdivide<V: HarmonicValue>(s: &V, t: &V, u: &V) -> [V; 3] {
    [
        V::combine(&[(2, s), (2, t), (1, u)], 5),
        V::combine(&[(2, s), (1, t), (2, u)], 5),
        V::combine(&[(1, s), (2, t), (2, u)], 5),
    ]
}

/// A vertex of `S_n`: the point `(i + j·ω) / 2^n`.
pub type VertexKey = (u32, u32);

#[derive(Debug, Clone)]
pub struct HarmonicGrid<V> {
    level: u32,
    values: BTreeMap<VertexKey, V>,
    triangles: Vec<[VertexKey; 3]>,
}

/// Builds the unique harmonic function on `S_level` with the given corner values.
pub fn harmonic_grid<V: HarmonicValue>(boundary: &BoundaryTriple<V>, level: u32, cap: u32) -> Result<HarmonicGrid<V>> {
    if level > cap {
        return Err(Error::Resource { requested: level, cap });
    }
    let mut values = BTreeMap::new();
    values.insert((0, 0), boundary.a.clone());
    values.insert((1, 0), boundary.b.clone());
    values.insert((0, 1), boundary.c.clone());
    let mut triangles: Vec<[VertexKey; 3]> = vec![[(0, 0), (1, 0), (0, 1)]];

    for _ in 0..level {
        let scaled: BTreeMap<VertexKey, V> = values.into_iter().map(|((i, j), v)| ((2 * i, 2 * j), v)).collect();
        values = scaled;
        let mut next = Vec::with_capacity(triangles.len() * 3);
        for [s, t, u] in triangles {
            let (s, t, u) = ((2 * s.0, 2 * s.1), (2 * t.0, 2 * t.1), (2 * u.0, 2 * u.1));
            let mid = |p: VertexKey, q: VertexKey| ((p.0 + q.0) / 2, (p.1 + q.1) / 2);
            let (st, su, tu) = (mid(s, t), mid(s, u), mid(t, u));
            let [v_st, v_su, v_tu] = subdivide(&values[&s], &values[&t], &values[&u]);
            // shared midpoints get the same value from either neighbouring triangle
            values.entry(st).or_insert(v_st);
            values.entry(su).or_insert(v_su);
            values.entry(tu).or_insert(v_tu);
            next.push([s, st, su]);
            next.push([st, t, tu]);
            next.push([su, tu, u]);
        }
        triangles = next;
    }
    Ok(HarmonicGrid { level, values, triangles })
}

impl<V: HarmonicValue> HarmonicGrid<V> {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, key: VertexKey) -> Option<&V> {
        self.values.get(&key)
    }

    pub fn values(&self) -> &BTreeMap<VertexKey, V> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut BTreeMap<VertexKey, V> {
        &mut self.values
    }

    pub fn triangles(&self) -> &[[VertexKey; 3]] {
        &self.triangles
    }

    /// Key of the point `x + y·ω` if it is a vertex at this level.
    pub fn key_of(&self, x: &Rational, y: &Rational) -> Option<VertexKey> {
        let scale = Rational::from_integer(BigInt::from(1u64) << self.level);
        let (sx, sy) = (x * &scale, y * &scale);
        if !sx.is_integer() || !sy.is_integer() {
            return None;
        }
        let k = (u32::try_from(sx.to_integer()).ok()?, u32::try_from(sy.to_integer()).ok()?);
        self.values.contains_key(&k).then_some(k)
    }

    /// Exact coordinates `(x, y)` of a vertex in the basis `(1, ω)`.
    pub fn coordinates(&self, key: VertexKey) -> (Rational, Rational) {
        let d = BigInt::from(1u64) << self.level;
        (Rational::new(key.0.into(), d.clone()), Rational::new(key.1.into(), d))
    }

    pub fn is_corner(&self, key: VertexKey) -> bool {
        let full = 1u32 << self.level;
        key == (0, 0) || key == (full, 0) || key == (0, full)
    }

    /// Undirected edges of the level graph, each listed once.
    pub fn edges(&self) -> BTreeSet<(VertexKey, VertexKey)> {
        let mut edges = BTreeSet::new();
        for [s, t, u] in &self.triangles {
            for (p, q) in [(s, t), (s, u), (t, u)] {
                edges.insert(if p < q { (*p, *q) } else { (*q, *p) });
            }
        }
        edges
    }

    pub fn neighbours(&self) -> BTreeMap<VertexKey, Vec<VertexKey>> {
        let mut adj: BTreeMap<VertexKey, Vec<VertexKey>> = BTreeMap::new();
        for (p, q) in self.edges() {
            adj.entry(p).or_default().push(q);
            adj.entry(q).or_default().push(p);
        }
        adj
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
        let mut wtr = csv::Writer::from_writer(out);
        let width = self.values.values().next().map(|v| v.components().len()).unwrap_or(0);
        let mut header = vec!["x".to_string(), "y".to_string()];
        header.extend((0..width).map(|i| format!("value{i}")));
        wtr.write_record(&header).map_err(io)?;
        for (&key, v) in &self.values {
            let (x, y) = self.coordinates(key);
            let mut row = vec![fmt_rational(&x), fmt_rational(&y)];
            row.extend(v.components().iter().map(fmt_rational));
            wtr.write_record(&row).map_err(io)?;
        }
        wtr.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|(&key, v)| {
                let (x, y) = self.coordinates(key);
                json!({
                    "x": fmt_rational(&x),
                    "y": fmt_rational(&y),
                    "value": v.components().iter().map(fmt_rational).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "level": self.level, "vertices": vertices })
    }
}

/// True iff every non-corner vertex has four neighbours and equals their exact mean.
pub fn check_harmonic<V: HarmonicValue>(grid: &HarmonicGrid<V>) -> bool {
    grid.neighbours().iter().filter(|(k, _)| !grid.is_corner(**k)).all(|(k, nbrs)| {
        if nbrs.len() != 4 {
            return false;
        }
        let terms: Vec<(i64, &V)> = nbrs.iter().map(|n| (1, &grid.values[n])).collect();
        V::combine(&terms, 4) == grid.values[k]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn scalar(a: i64, b: i64, c: i64) -> BoundaryTriple<Rational> {
        BoundaryTriple::new(int(a), int(b), int(c))
    }

    #[test]
    fn subdivision_weights() {
        let [st, su, tu] = subdivide(&int(1), &int(0), &int(0));
        assert_eq!((st, su, tu), (rat(2, 5), rat(2, 5), rat(1, 5)));
        let a = rat(3, 7);
        assert_eq!(subdivide(&a, &a, &a), [a.clone(), a.clone(), a]);
    }

    #[test]
    fn level_one() {
        let g = harmonic_grid(&scalar(1, 0, 0), 1, DEFAULT_GRID_CAP).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.get((1, 0)), Some(&rat(2, 5)));
        assert_eq!(g.get((0, 1)), Some(&rat(2, 5)));
        assert_eq!(g.get((1, 1)), Some(&rat(1, 5)));
        assert_eq!(g.edges().len(), 9);
        assert!(check_harmonic(&g));
    }

    #[test]
    fn vertex_counts_and_degrees() {
        for n in 0..5u32 {
            let g = harmonic_grid(&scalar(0, 1, 2), n, DEFAULT_GRID_CAP).unwrap();
            assert_eq!(g.len(), (3 * (3usize.pow(n) + 1)) / 2);
            for (k, nbrs) in g.neighbours() {
                assert_eq!(nbrs.len(), if g.is_corner(k) { 2 } else { 4 });
            }
        }
    }

    #[test]
    fn constant_boundary_gives_constant_grid() {
        let g = harmonic_grid(&scalar(4, 4, 4), 4, DEFAULT_GRID_CAP).unwrap();
        assert!(g.values().values().all(|v| *v == int(4)));
        assert!(check_harmonic(&g));
    }

    #[test]
    fn perturbation_breaks_harmonicity() {
        let mut g = harmonic_grid(&scalar(1, 0, 3), 3, DEFAULT_GRID_CAP).unwrap();
        let key = *g.values().keys().find(|k| !g.is_corner(**k)).unwrap();
        *g.values_mut().get_mut(&key).unwrap() += rat(1, 1000);
        assert!(!check_harmonic(&g));
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(harmonic_grid(&scalar(1, 0, 0), 11, 10), Err(Error::Resource { requested: 11, cap: 10 })));
    }

    #[test]
    fn exports() {
        let g = harmonic_grid(&BoundaryTriple::universal(), 1, DEFAULT_GRID_CAP).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("x,y,value0,value1,value2"));
        assert!(text.contains("1/2,0,2/5,2/5,1/5"));
        let j = g.to_json();
        assert_eq!(j["vertices"].as_array().unwrap().len(), 6);
    }
}
