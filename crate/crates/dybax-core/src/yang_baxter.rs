//! The parameter-dependent braiding `sigma`, the shifted monoid product
//! `m`, and the exhaustive checks tying them together.
//!
//! The construction pairs a finite left quasigroup `(L, ., e)` with a
//! group `G` of the same order through a bijection `pi: L -> G`. The
//! parameter set is `L` itself, acting on `L` by left multiplication.
//! Writing `lam a` for the quasigroup product and `\` for left division:
//!
//! * `xi_lam(a, b)  = lam \ pi^-1( pi(lam) pi(lam a)^-1 pi((lam a) b) )`
//! * `eta_lam(a, b) = (lam xi_lam(a, b)) \ ((lam a) b)`
//! * `sigma(lam)(a, b) = (xi_lam(a, b), eta_lam(a, b))`
//! * `m(lam)(a, b) = lam \ ((lam a) b)`
//!
//! `sigma` satisfies the braid relation on `L (x) L (x) L`, and `(L, m)`
//! is a monoid object braided by `sigma`. Checkers consume prebuilt
//! tables (not the defining formulas) so that deliberately corrupted
//! tables are caught; see the `overrides` section of the document format.

use crate::category::{self, HMorphism, HObject};
use crate::error::{Error, Result};
use crate::finite_algebra::{mu1, FiniteGroup, LeftQuasigroup};
use crate::report::{scan_lambdas, tuple_label, CheckReport, Witness};

/// A left quasigroup with unit glued to a group of the same order by a
/// bijection. This is the entire input of the construction.
#[derive(Debug, Clone)]
pub struct Structure {
    lq: LeftQuasigroup,
    group: FiniteGroup,
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
    lambda0: usize,
}

impl Structure {
    pub fn new(lq: LeftQuasigroup, group: FiniteGroup, pi: Vec<usize>) -> Result<Self> {
        let n = lq.n();
        if group.order() != n || pi.len() != n {
            return Err(Error::MismatchedH);
        }
        let mut pi_inv = vec![usize::MAX; n];
        for (l, &g) in pi.iter().enumerate() {
            if g >= n || pi_inv[g] != usize::MAX {
                return Err(Error::TypeMismatch(
                    "pairing is not a bijection onto the group".into(),
                ));
            }
            pi_inv[g] = l;
        }
        let lambda0 = pi_inv[group.unit()];
        Ok(Structure {
            lq,
            group,
            pi,
            pi_inv,
            lambda0,
        })
    }

    pub fn n(&self) -> usize {
        self.lq.n()
    }

    pub fn lq(&self) -> &LeftQuasigroup {
        &self.lq
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn unit(&self) -> usize {
        self.lq.unit()
    }

    /// The distinguished parameter `pi^-1(e_G)`.
    pub fn lambda0(&self) -> usize {
        self.lambda0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.lq.mul(a, b)
    }

    pub fn ldiv(&self, a: usize, c: usize) -> usize {
        self.lq.left_divide(a, c)
    }

    pub fn pi(&self, a: usize) -> usize {
        self.pi[a]
    }

    pub fn pi_inv(&self, g: usize) -> usize {
        self.pi_inv[g]
    }

    pub fn label(&self, a: usize) -> &str {
        self.lq.label(a)
    }

    /// First braiding component.
    pub fn xi(&self, lam: usize, a: usize, b: usize) -> usize {
        let la = self.mul(lam, a);
        let lab = self.mul(la, b);
        let g = mu1(&self.group, self.pi[lam], self.pi[la], self.pi[lab]);
        self.ldiv(lam, self.pi_inv[g])
    }

    /// Second braiding component, determined by shift preservation.
    pub fn eta(&self, lam: usize, a: usize, b: usize) -> usize {
        let x = self.xi(lam, a, b);
        self.ldiv(self.mul(lam, x), self.mul(self.mul(lam, a), b))
    }

    pub fn sigma_at(&self, lam: usize, a: usize, b: usize) -> (usize, usize) {
        (self.xi(lam, a, b), self.eta(lam, a, b))
    }

    /// The monoid product `m(lam)(a, b) = lam \ ((lam a) b)`.
    pub fn m_at(&self, lam: usize, a: usize, b: usize) -> usize {
        self.ldiv(lam, self.mul(self.mul(lam, a), b))
    }

    /// The per-parameter group transported from `G`:
    /// `a ._lam b = lam \ pi^-1( pi(lam a) pi(lam)^-1 pi(lam b) )`.
    pub fn dot_lambda(&self, lam: usize, a: usize, b: usize) -> usize {
        let g = mu1(
            &self.group,
            self.pi[self.mul(lam, a)],
            self.pi[lam],
            self.pi[self.mul(lam, b)],
        );
        self.ldiv(lam, self.pi_inv[g])
    }

    /// Inverse in the per-parameter group.
    pub fn dot_lambda_inv(&self, lam: usize, a: usize) -> usize {
        let g = mu1(
            &self.group,
            self.pi[lam],
            self.pi[self.mul(lam, a)],
            self.pi[lam],
        );
        self.ldiv(lam, self.pi_inv[g])
    }

    /// The displacement map
    /// `rho^lam_b(a) = lam \ pi^-1( pi((lam b) a) pi(lam b)^-1 pi(lam) )`.
    pub fn rho(&self, lam: usize, b: usize, a: usize) -> usize {
        let lb = self.mul(lam, b);
        let g = mu1(&self.group, self.pi[self.mul(lb, a)], self.pi[lb], self.pi[lam]);
        self.ldiv(lam, self.pi_inv[g])
    }

    /// The section `iota^lam(a) = (a, (lam a) \ lam)` of the product pair.
    pub fn iota(&self, lam: usize, a: usize) -> (usize, usize) {
        (a, self.ldiv(self.mul(lam, a), lam))
    }

    /// The transported group product on `L` itself:
    /// `a * b = pi^-1(pi(a) pi(b))`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.pi_inv[self.group.mul(self.pi[a], self.pi[b])]
    }

    /// Inverse for [`Structure::star`].
    pub fn star_inv(&self, a: usize) -> usize {
        self.pi_inv[self.group.inv(self.pi[a])]
    }

    /// Two-sided inverse of `a` for the quasigroup product, when it exists.
    pub fn quasigroup_inverse(&self, a: usize) -> Option<usize> {
        let e = self.unit();
        let b = self.ldiv(a, e);
        (self.mul(b, a) == e).then_some(b)
    }

    /// The carrier `L` as an object: the shift is left multiplication.
    pub fn l_object(&self) -> HObject {
        HObject {
            h: self.n(),
            size: self.n(),
            act: self.lq.table().to_vec(),
        }
    }
}

/// Flat table of a parameter-indexed map `L (x) W -> L (x) W`, used for
/// the braiding (`W = L`) and for boundary maps (`W = X`). Entries can be
/// patched afterwards, which is how deliberate corruptions (negative
/// controls) enter the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistTable {
    pub n: usize,
    pub w: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl TwistTable {
    pub fn at(&self, lam: usize, a: usize, x: usize) -> (usize, usize) {
        let i = (lam * self.n + a) * self.w + x;
        (self.left[i], self.right[i])
    }

    pub fn set(&mut self, lam: usize, a: usize, x: usize, l: usize, r: usize) {
        let i = (lam * self.n + a) * self.w + x;
        self.left[i] = l;
        self.right[i] = r;
    }

    /// The same data as a morphism `L (x) W -> L (x) W`.
    pub fn to_morphism(&self) -> HMorphism {
        let size = self.n * self.w;
        let map = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(&l, &r)| l * self.w + r)
            .collect();
        HMorphism {
            h: self.n,
            src: size,
            dst: size,
            map,
        }
    }
}

/// Flat table for the monoid product `m(lam)(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    pub n: usize,
    pub map: Vec<usize>,
    pub unit: usize,
}

impl MonoidTable {
    pub fn at(&self, lam: usize, a: usize, b: usize) -> usize {
        self.map[(lam * self.n + a) * self.n + b]
    }

    /// The product as a morphism `L (x) L -> L`.
    pub fn to_morphism(&self) -> HMorphism {
        HMorphism {
            h: self.n,
            src: self.n * self.n,
            dst: self.n,
            map: self.map.clone(),
        }
    }
}

/// Tabulates the braiding.
pub fn build_sigma(s: &Structure) -> TwistTable {
    let n = s.n();
    let mut left = vec![0usize; n * n * n];
    let mut right = vec![0usize; n * n * n];
    for lam in 0..n {
        for a in 0..n {
            for b in 0..n {
                let i = (lam * n + a) * n + b;
                let (xi, eta) = s.sigma_at(lam, a, b);
                left[i] = xi;
                right[i] = eta;
            }
        }
    }
    TwistTable { n, w: n, left, right }
}

/// Tabulates the closed-form inverse braiding
/// `sigma^-1(lam)(a, b) = (lam \ c, c \ ((lam a) b))` with
/// `c = pi^-1( pi((lam a) b) pi(lam a)^-1 pi(lam) )`.
pub fn sigma_inverse(s: &Structure) -> TwistTable {
    let n = s.n();
    let mut left = vec![0usize; n * n * n];
    let mut right = vec![0usize; n * n * n];
    for lam in 0..n {
        for a in 0..n {
            for b in 0..n {
                let la = s.mul(lam, a);
                let lab = s.mul(la, b);
                let c = s.pi_inv(mu1(s.group(), s.pi(lab), s.pi(la), s.pi(lam)));
                let i = (lam * n + a) * n + b;
                left[i] = s.ldiv(lam, c);
                right[i] = s.ldiv(c, lab);
            }
        }
    }
    TwistTable { n, w: n, left, right }
}

/// Tabulates the monoid product.
pub fn build_monoid(s: &Structure) -> MonoidTable {
    let n = s.n();
    let mut map = vec![0usize; n * n * n];
    for lam in 0..n {
        for a in 0..n {
            for b in 0..n {
                map[(lam * n + a) * n + b] = s.m_at(lam, a, b);
            }
        }
    }
    MonoidTable {
        n,
        map,
        unit: s.unit(),
    }
}

/// Exhaustive braid relation check over `L (x) L (x) L`:
/// `(sigma (x) 1)(1 (x) sigma)(sigma (x) 1)
///   = (1 (x) sigma)(sigma (x) 1)(1 (x) sigma)`,
/// where the right factor of each word is applied first and the inner
/// `sigma` sees the parameter shifted by the first coordinate.
pub fn check_braid_relation(s: &Structure, sig: &TwistTable) -> CheckReport {
    let n = s.n();
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cases += 1;
                    // left word: (sigma x 1)(1 x sigma)(sigma x 1)
                    let (u, v) = sig.at(lam, a, b);
                    let (p, q) = sig.at(s.mul(lam, u), v, c);
                    let (r, w) = sig.at(lam, u, p);
                    let lhs = (r, w, q);
                    // right word: (1 x sigma)(sigma x 1)(1 x sigma)
                    let (p2, q2) = sig.at(s.mul(lam, a), b, c);
                    let (r2, s2) = sig.at(lam, a, p2);
                    let (t2, u2) = sig.at(s.mul(lam, r2), s2, q2);
                    let rhs = (r2, t2, u2);
                    if lhs != rhs {
                        return (
                            cases,
                            Some(Witness {
                                check: "braid-relation".into(),
                                lambda: s.label(lam).into(),
                                inputs: vec![
                                    s.label(a).into(),
                                    s.label(b).into(),
                                    s.label(c).into(),
                                ],
                                lhs: tuple_label(&[s.label(lhs.0), s.label(lhs.1), s.label(lhs.2)]),
                                rhs: tuple_label(&[s.label(rhs.0), s.label(rhs.1), s.label(rhs.2)]),
                            }),
                        );
                    }
                }
            }
        }
        (cases, None)
    });
    CheckReport::from_scan("braid-relation", cases, witness)
}

/// Checks that the closed-form inverse really inverts the braiding, in
/// both orders, at every parameter.
pub fn check_sigma_inverse(s: &Structure, sig: &TwistTable, sig_inv: &TwistTable) -> CheckReport {
    let n = s.n();
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                cases += 1;
                let (x, y) = sig.at(lam, a, b);
                let back = sig_inv.at(lam, x, y);
                let (p, q) = sig_inv.at(lam, a, b);
                let forth = sig.at(lam, p, q);
                if back != (a, b) || forth != (a, b) {
                    let got = if back != (a, b) { back } else { forth };
                    return (
                        cases,
                        Some(Witness {
                            check: "sigma-inverse".into(),
                            lambda: s.label(lam).into(),
                            inputs: vec![s.label(a).into(), s.label(b).into()],
                            lhs: tuple_label(&[s.label(got.0), s.label(got.1)]),
                            rhs: tuple_label(&[s.label(a), s.label(b)]),
                        }),
                    );
                }
            }
        }
        (cases, None)
    });
    CheckReport::from_scan("sigma-inverse", cases, witness)
}

/// The full braided-monoid suite: unit laws, shifted associativity, both
/// hexagon compatibilities between `sigma` and `m`, the two `sigma` unit
/// laws, absorption `m . sigma = m`, left cancellativity of `m`, and the
/// shift-compatibility of both maps.
pub fn check_braided_monoid(
    s: &Structure,
    sig: &TwistTable,
    mon: &MonoidTable,
) -> Vec<CheckReport> {
    let n = s.n();
    let mut out = Vec::new();

    // m(lam)(e, b) = b
    let (cases, witness) = scan_lambdas(n, |lam| {
        for b in 0..n {
            let got = mon.at(lam, s.unit(), b);
            if got != b {
                return (
                    (b + 1) as u64,
                    Some(witness2(s, "monoid-left-unit", lam, &[s.unit(), b], got, b)),
                );
            }
        }
        (n as u64, None)
    });
    out.push(CheckReport::from_scan("monoid-left-unit", cases, witness));

    // m(lam)(a, e) = a
    let (cases, witness) = scan_lambdas(n, |lam| {
        for a in 0..n {
            let got = mon.at(lam, a, s.unit());
            if got != a {
                return (
                    (a + 1) as u64,
                    Some(witness2(s, "monoid-right-unit", lam, &[a, s.unit()], got, a)),
                );
            }
        }
        (n as u64, None)
    });
    out.push(CheckReport::from_scan("monoid-right-unit", cases, witness));

    // m(lam)(m(lam)(a,b), c) = m(lam)(a, m(lam a)(b, c))
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cases += 1;
                    let lhs = mon.at(lam, mon.at(lam, a, b), c);
                    let rhs = mon.at(lam, a, mon.at(s.mul(lam, a), b, c));
                    if lhs != rhs {
                        return (
                            cases,
                            Some(witness2(s, "monoid-associativity", lam, &[a, b, c], lhs, rhs)),
                        );
                    }
                }
            }
        }
        (cases, None)
    });
    out.push(CheckReport::from_scan("monoid-associativity", cases, witness));

    // sigma(lam)(m(lam)(a,b), c) built two ways (hexagon with the product
    // in the left tensor slot).
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cases += 1;
                    let (p, q) = sig.at(s.mul(lam, a), b, c);
                    let (u, v) = sig.at(lam, a, p);
                    let lhs = (u, mon.at(s.mul(lam, u), v, q));
                    let rhs = sig.at(lam, mon.at(lam, a, b), c);
                    if lhs != rhs {
                        return (
                            cases,
                            Some(Witness {
                                check: "hexagon-product-left".into(),
                                lambda: s.label(lam).into(),
                                inputs: vec![
                                    s.label(a).into(),
                                    s.label(b).into(),
                                    s.label(c).into(),
                                ],
                                lhs: tuple_label(&[s.label(lhs.0), s.label(lhs.1)]),
                                rhs: tuple_label(&[s.label(rhs.0), s.label(rhs.1)]),
                            }),
                        );
                    }
                }
            }
        }
        (cases, None)
    });
    out.push(CheckReport::from_scan("hexagon-product-left", cases, witness));

    // sigma(lam)(a, m(lam a)(b, c)) built two ways (product in the right
    // tensor slot).
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    cases += 1;
                    let (xi, eta) = sig.at(lam, a, b);
                    let (p, q) = sig.at(s.mul(lam, xi), eta, c);
                    let lhs = (mon.at(lam, xi, p), q);
                    let rhs = sig.at(lam, a, mon.at(s.mul(lam, a), b, c));
                    if lhs != rhs {
                        return (
                            cases,
                            Some(Witness {
                                check: "hexagon-product-right".into(),
                                lambda: s.label(lam).into(),
                                inputs: vec![
                                    s.label(a).into(),
                                    s.label(b).into(),
                                    s.label(c).into(),
                                ],
                                lhs: tuple_label(&[s.label(lhs.0), s.label(lhs.1)]),
                                rhs: tuple_label(&[s.label(rhs.0), s.label(rhs.1)]),
                            }),
                        );
                    }
                }
            }
        }
        (cases, None)
    });
    out.push(CheckReport::from_scan("hexagon-product-right", cases, witness));

    // sigma(lam)(e, a) = (a, e)
    let (cases, witness) = scan_lambdas(n, |lam| {
        for a in 0..n {
            let got = sig.at(lam, s.unit(), a);
            if got != (a, s.unit()) {
                return (
                    (a + 1) as u64,
                    Some(Witness {
                        check: "sigma-left-unit".into(),
                        lambda: s.label(lam).into(),
                        inputs: vec![s.label(s.unit()).into(), s.label(a).into()],
                        lhs: tuple_label(&[s.label(got.0), s.label(got.1)]),
                        rhs: tuple_label(&[s.label(a), s.label(s.unit())]),
                    }),
                );
            }
        }
        (n as u64, None)
    });
    out.push(CheckReport::from_scan("sigma-left-unit", cases, witness));

    // sigma(lam)(a, e) = (e, a)
    let (cases, witness) = scan_lambdas(n, |lam| {
        for a in 0..n {
            let got = sig.at(lam, a, s.unit());
            if got != (s.unit(), a) {
                return (
                    (a + 1) as u64,
                    Some(Witness {
                        check: "sigma-right-unit".into(),
                        lambda: s.label(lam).into(),
                        inputs: vec![s.label(a).into(), s.label(s.unit()).into()],
                        lhs: tuple_label(&[s.label(got.0), s.label(got.1)]),
                        rhs: tuple_label(&[s.label(s.unit()), s.label(a)]),
                    }),
                );
            }
        }
        (n as u64, None)
    });
    out.push(CheckReport::from_scan("sigma-right-unit", cases, witness));

    // m . sigma = m
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            for b in 0..n {
                cases += 1;
                let (x, y) = sig.at(lam, a, b);
                let lhs = mon.at(lam, x, y);
                let rhs = mon.at(lam, a, b);
                if lhs != rhs {
                    return (
                        cases,
                        Some(witness2(s, "product-absorbs-sigma", lam, &[a, b], lhs, rhs)),
                    );
                }
            }
        }
        (cases, None)
    });
    out.push(CheckReport::from_scan("product-absorbs-sigma", cases, witness));

    // b -> m(lam)(a, b) is injective for every (lam, a). This is also the
    // standing hypothesis for the boundary theory.
    let (cases, witness) = scan_lambdas(n, |lam| {
        let mut cases = 0u64;
        for a in 0..n {
            let mut seen = vec![usize::MAX; n];
            for b in 0..n {
                cases += 1;
                let v = mon.at(lam, a, b);
                if seen[v] != usize::MAX {
                    return (
                        cases,
                        Some(Witness {
                            check: "product-left-cancellative".into(),
                            lambda: s.label(lam).into(),
                            inputs: vec![s.label(a).into(), s.label(seen[v]).into(), s.label(b).into()],
                            lhs: s.label(v).into(),
                            rhs: s.label(v).into(),
                        }),
                    );
                }
                seen[v] = b;
            }
        }
        (cases, None)
    });
    out.push(CheckReport::from_scan(
        "product-left-cancellative",
        cases,
        witness,
    ));

    // shift-compatibility of sigma and m as morphisms
    let l = s.l_object();
    let ll = category::tensor_objects(&l, &l).expect("same parameter set");
    let sig_m = sig.to_morphism();
    let w = category::validate_morphism(&ll, &ll, &sig_m).map(|(lam, i)| Witness {
        check: "sigma-shift-law".into(),
        lambda: s.label(lam).into(),
        inputs: vec![s.label(i / n).into(), s.label(i % n).into()],
        lhs: "shift of image".into(),
        rhs: "shift of argument".into(),
    });
    out.push(CheckReport::from_scan(
        "sigma-shift-law",
        (n * n * n) as u64,
        w,
    ));
    let mon_m = mon.to_morphism();
    let w = category::validate_morphism(&ll, &l, &mon_m).map(|(lam, i)| Witness {
        check: "product-shift-law".into(),
        lambda: s.label(lam).into(),
        inputs: vec![s.label(i / n).into(), s.label(i % n).into()],
        lhs: "shift of image".into(),
        rhs: "shift of argument".into(),
    });
    out.push(CheckReport::from_scan(
        "product-shift-law",
        (n * n * n) as u64,
        w,
    ));

    out
}

fn witness2(
    s: &Structure,
    check: &str,
    lam: usize,
    inputs: &[usize],
    lhs: usize,
    rhs: usize,
) -> Witness {
    Witness {
        check: check.into(),
        lambda: s.label(lam).into(),
        inputs: inputs.iter().map(|&i| s.label(i).to_string()).collect(),
        lhs: s.label(lhs).into(),
        rhs: s.label(rhs).into(),
    }
}
