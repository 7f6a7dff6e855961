//! The named vectors of the vector plane and the cones they span.

use num_traits::{Signed, Zero};

use super::rational::{rat, Rational, Vec3Q};

/// `v⃗_0 = (−1, ½, ½)`, eigenvector of `M⃗_0` for 3/5.
pub fn v0() -> Vec3Q {
    Vec3Q::new(rat(-1, 1), rat(1, 2), rat(1, 2))
}

/// `v⃗_1 = (−½, 1, −½)`, eigenvector of `M⃗_1` for 3/5.
pub fn v1() -> Vec3Q {
    Vec3Q::new(rat(-1, 2), rat(1, 1), rat(-1, 2))
}

/// `w⃗_0 = (0, ½, −½)`, eigenvector of `M⃗_0` for 1/5.
pub fn w0() -> Vec3Q {
    Vec3Q::new(rat(0, 1), rat(1, 2), rat(-1, 2))
}

/// `w⃗_1 = (−½, 0, ½)`, eigenvector of `M⃗_1` for 1/5.
pub fn w1() -> Vec3Q {
    Vec3Q::new(rat(-1, 2), rat(0, 1), rat(1, 2))
}

/// Chart basis vector `v = (−½, −½, 1)`.
pub fn chart_v() -> Vec3Q {
    Vec3Q::new(rat(-1, 2), rat(-1, 2), rat(1, 1))
}

/// Chart basis vector `w = (−½, ½, 0)`.
pub fn chart_w() -> Vec3Q {
    Vec3Q::new(rat(-1, 2), rat(1, 2), rat(0, 1))
}

/// A closed salient cone `{a g_0 + b g_1 : a, b ≥ 0}` in the vector plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    generators: [Vec3Q; 2],
}

impl ConeSpec {
    pub fn new(g0: Vec3Q, g1: Vec3Q) -> Option<ConeSpec> {
        let spec = ConeSpec { generators: [g0, g1] };
        (!spec.det_xy().is_zero() && spec.generators.iter().all(Vec3Q::in_vector_plane)).then_some(spec)
    }

    /// The difference cone spanned by `v⃗_0`, `v⃗_1`; contains every `u(t) − u(s)` with `s < t`.
    pub fn difference_cone() -> ConeSpec {
        ConeSpec::new(v0(), v1()).unwrap()
    }

    /// The wider cone spanned by `w⃗_0`, `w⃗_1`.
    pub fn outer_cone() -> ConeSpec {
        ConeSpec::new(w0(), w1()).unwrap()
    }

    pub fn generators(&self) -> &[Vec3Q; 2] {
        &self.generators
    }

    // plane vectors are determined by their first two coordinates
    fn det_xy(&self) -> Rational {
        let [g, h] = &self.generators;
        g.x() * h.y() - g.y() * h.x()
    }

    /// Exact `(a, b)` with `v = a g_0 + b g_1`, or `None` when `v` is off the plane.
    pub fn coordinates(&self, v: &Vec3Q) -> Option<(Rational, Rational)> {
        if !v.in_vector_plane() {
            return None;
        }
        let [g, h] = &self.generators;
        let det = self.det_xy();
        let a = (v.x() * h.y() - v.y() * h.x()) / &det;
        let b = (g.x() * v.y() - g.y() * v.x()) / &det;
        Some((a, b))
    }

    /// Membership in the cone minus the origin.
    pub fn contains(&self, v: &Vec3Q) -> bool {
        match self.coordinates(v) {
            Some((a, b)) => !a.is_negative() && !b.is_negative() && !(a.is_zero() && b.is_zero()),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_decompose() {
        let k = ConeSpec::difference_cone();
        assert_eq!(k.coordinates(&v0()), Some((rat(1, 1), rat(0, 1))));
        assert!(k.contains(&(&v0() + &v1())));
        assert!(!k.contains(&(-&v0())));
        assert!(!k.contains(&Vec3Q::zero()));
        assert!(!k.contains(&Vec3Q::from_ints(1, 0, 0)));
    }

    #[test]
    fn inner_cone_lies_inside_outer() {
        let outer = ConeSpec::outer_cone();
        assert!(outer.contains(&v0()));
        assert!(outer.contains(&v1()));
    }

    #[test]
    fn dependent_generators_rejected() {
        assert!(ConeSpec::new(v0(), v0().scale(&rat(2, 1))).is_none());
    }
}
