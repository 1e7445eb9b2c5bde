//! The ambient category: finite sets indexed by a parameter set `H`.
//!
//! An object is a finite set `X` together with an arbitrary map
//! `H x X -> H`, written `lam . x` and called the shift. A morphism
//! `f: X -> Y` is a family of maps `f(lam): X -> Y` compatible with the
//! shifts: `lam . f(lam)(x) = lam . x`. Composition is pointwise in the
//! parameter; no shift is inserted when composing. The tensor product
//! shifts the right factor by the left one:
//!
//! * objects: `lam . (x, y) = (lam . x) . y`
//! * morphisms: `(f (x) g)(lam)(x, y) = (f(lam)(x), g(lam . x)(y))`
//!
//! Tensor pairs `(x, y)` are flattened row-major, so the associator is the
//! identity on indices and never needs explicit tables.

use crate::error::{Error, Result};

/// An object: carrier size plus the shift table `act[lam * size + x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HObject {
    pub h: usize,
    pub size: usize,
    pub act: Vec<usize>,
}

impl HObject {
    pub fn new(h: usize, size: usize, act: Vec<usize>) -> Result<Self> {
        if act.len() != h * size || act.iter().any(|&v| v >= h) {
            return Err(Error::TypeMismatch(format!(
                "shift table must be {h} x {size} with values below {h}"
            )));
        }
        Ok(HObject { h, size, act })
    }

    /// The shift `lam . x`.
    pub fn dot(&self, lam: usize, x: usize) -> usize {
        self.act[lam * self.size + x]
    }

    /// The tensor unit: a single point shifted trivially.
    pub fn unit(h: usize) -> Self {
        HObject {
            h,
            size: 1,
            act: (0..h).collect(),
        }
    }
}

/// A morphism: the table `map[lam * src + x]` of images in the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMorphism {
    pub h: usize,
    pub src: usize,
    pub dst: usize,
    pub map: Vec<usize>,
}

impl HMorphism {
    pub fn new(h: usize, src: usize, dst: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != h * src || map.iter().any(|&v| v >= dst) {
            return Err(Error::TypeMismatch(format!(
                "morphism table must be {h} x {src} with values below {dst}"
            )));
        }
        Ok(HMorphism { h, src, dst, map })
    }

    pub fn apply(&self, lam: usize, x: usize) -> usize {
        self.map[lam * self.src + x]
    }

    pub fn identity(h: usize, size: usize) -> Self {
        HMorphism {
            h,
            src: size,
            dst: size,
            map: (0..h).flat_map(|_| 0..size).collect(),
        }
    }
}

/// Tensor of objects; fails when the parameter sets differ.
pub fn tensor_objects(x: &HObject, y: &HObject) -> Result<HObject> {
    if x.h != y.h {
        return Err(Error::MismatchedH);
    }
    let size = x.size * y.size;
    let mut act = vec![0usize; x.h * size];
    for lam in 0..x.h {
        for a in 0..x.size {
            let shifted = x.dot(lam, a);
            for b in 0..y.size {
                act[lam * size + a * y.size + b] = y.dot(shifted, b);
            }
        }
    }
    Ok(HObject { h: x.h, size, act })
}

/// Tensor of morphisms. `src_x` and `src_y` are the source objects of `f`
/// and `g`; the right factor is evaluated at the parameter shifted by the
/// left factor's source element.
pub fn tensor_morphisms(
    src_x: &HObject,
    src_y: &HObject,
    f: &HMorphism,
    g: &HMorphism,
) -> Result<HMorphism> {
    if src_x.h != src_y.h || f.h != g.h || f.h != src_x.h {
        return Err(Error::MismatchedH);
    }
    if f.src != src_x.size || g.src != src_y.size {
        return Err(Error::TypeMismatch(
            "tensor factors do not match the given source objects".into(),
        ));
    }
    let src = f.src * g.src;
    let dst = f.dst * g.dst;
    let mut map = vec![0usize; f.h * src];
    for lam in 0..f.h {
        for a in 0..f.src {
            let fa = f.apply(lam, a);
            let shifted = src_x.dot(lam, a);
            for b in 0..g.src {
                map[lam * src + a * g.src + b] = fa * g.dst + g.apply(shifted, b);
            }
        }
    }
    Ok(HMorphism {
        h: f.h,
        src,
        dst,
        map,
    })
}

/// Pointwise composition `g . f` (first `f`, then `g`, at the same
/// parameter).
pub fn compose_morphisms(g: &HMorphism, f: &HMorphism) -> Result<HMorphism> {
    if g.h != f.h {
        return Err(Error::MismatchedH);
    }
    if f.dst != g.src {
        return Err(Error::TypeMismatch(format!(
            "cannot compose: inner target {} does not match outer source {}",
            f.dst, g.src
        )));
    }
    let map = (0..f.h)
        .flat_map(|lam| (0..f.src).map(move |x| (lam, x)))
        .map(|(lam, x)| g.apply(lam, f.apply(lam, x)))
        .collect();
    Ok(HMorphism {
        h: f.h,
        src: f.src,
        dst: g.dst,
        map,
    })
}

/// Checks the shift-compatibility law `lam . f(lam)(x) = lam . x`;
/// returns the first failing `(lam, x)` in index order.
pub fn validate_morphism(x: &HObject, y: &HObject, f: &HMorphism) -> Option<(usize, usize)> {
    for lam in 0..x.h {
        for a in 0..x.size {
            if y.dot(lam, f.apply(lam, a)) != x.dot(lam, a) {
                return Some((lam, a));
            }
        }
    }
    None
}

pub fn morphisms_equal(f: &HMorphism, g: &HMorphism) -> bool {
    f.h == g.h && f.src == g.src && f.dst == g.dst && f.map == g.map
}

/// Left unitor `I (x) X -> X`: the identity on indices, since the unit is
/// a single point.
pub fn left_unitor(h: usize, x_size: usize) -> HMorphism {
    HMorphism::identity(h, x_size)
}

/// Right unitor `X (x) I -> X`, also the identity on indices.
pub fn right_unitor(h: usize, x_size: usize) -> HMorphism {
    HMorphism::identity(h, x_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::validate_left_quasigroup;

    fn l_object() -> HObject {
        let labels = ["e", "l1", "l2", "l3", "l4", "l5"]
            .map(String::from)
            .to_vec();
        let rows: [[usize; 6]; 6] = [
            [0, 1, 2, 3, 4, 5],
            [1, 5, 3, 4, 2, 0],
            [2, 3, 5, 1, 0, 4],
            [3, 4, 0, 2, 5, 1],
            [4, 0, 1, 5, 3, 2],
            [5, 2, 4, 0, 1, 3],
        ];
        let q = validate_left_quasigroup(labels, rows.concat()).unwrap();
        HObject::new(6, 6, q.table().to_vec()).unwrap()
    }

    #[test]
    fn tensor_shift_is_iterated_shift() {
        let l = l_object();
        let ll = tensor_objects(&l, &l).unwrap();
        for lam in 0..6 {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(ll.dot(lam, a * 6 + b), l.dot(l.dot(lam, a), b));
                }
            }
        }
    }

    #[test]
    fn unit_object_cancels_under_tensor() {
        let l = l_object();
        let i = HObject::unit(6);
        assert_eq!(tensor_objects(&i, &l).unwrap().act, l.act);
        assert_eq!(tensor_objects(&l, &i).unwrap().act, l.act);
    }

    #[test]
    fn composition_is_pointwise() {
        let l = l_object();
        let id = HMorphism::identity(6, 6);
        let c = compose_morphisms(&id, &id).unwrap();
        assert!(morphisms_equal(&c, &id));
        assert_eq!(validate_morphism(&l, &l, &id), None);
    }

    #[test]
    fn validate_morphism_catches_shift_violation() {
        let l = l_object();
        // Swap two elements uniformly; the shift law breaks somewhere.
        let mut map = HMorphism::identity(6, 6).map;
        for lam in 0..6 {
            map.swap(lam * 6, lam * 6 + 1);
        }
        let f = HMorphism::new(6, 6, 6, map).unwrap();
        assert_eq!(validate_morphism(&l, &l, &f), Some((0, 0)));
    }

    #[test]
    fn tensor_morphisms_shift_the_right_factor() {
        let l = l_object();
        let id = HMorphism::identity(6, 6);
        let t = tensor_morphisms(&l, &l, &id, &id).unwrap();
        assert!(morphisms_equal(&t, &HMorphism::identity(6, 36)));
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let l = l_object();
        let id5 = HMorphism::identity(6, 5);
        assert!(tensor_morphisms(&l, &l, &id5, &id5).is_err());
        let id6 = HMorphism::identity(6, 6);
        assert!(compose_morphisms(&id5, &id6).is_err());
    }
}
