//! Quivers over the parameter set, the embedding of parameterized sets
//! into them, and lifted solutions.
//!
//! A quiver here is a finite set of arrows with source and target maps
//! into `H`. Every parameterized set `X` embeds as the quiver
//! `Q(X) = H x X` with `src(lam, x) = lam` and `tgt(lam, x) = lam . x`,
//! and every parameterized map `f` becomes the arrow map
//! `Q(f)(lam, x) = (lam, f(lam)(x))`. Products are fiber products over
//! matching endpoints, and the pairing `phi2` identifies composable pairs
//! of embedded quivers with the embedded tensor. Pushing the braiding and
//! the boundary map through that identification gives arrow permutations
//! whose braid and reflection equations are checked over composable
//! chains.

use std::collections::HashMap;

use crate::category::{self, HMorphism, HObject};
use crate::error::{Error, Result};
use crate::module_theory::ModuleX;
use crate::report::{scan_lambdas, CheckReport, Witness};
use crate::yang_baxter::{Structure, TwistTable};

/// A finite quiver: arrows with labels and endpoint maps into `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub h: usize,
    pub labels: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    /// Arrows grouped by source node, in arrow-index order.
    pub fn arrows_from(&self) -> Vec<Vec<usize>> {
        let mut buckets = vec![Vec::new(); self.h];
        for (i, &s) in self.src.iter().enumerate() {
            buckets[s].push(i);
        }
        buckets
    }
}

/// A map of arrows. Endpoint preservation is a property checked by the
/// verifiers, not an invariant of the type, so that corrupted tables flow
/// into failing checks instead of unrepresentable states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub src_arrows: usize,
    pub dst_arrows: usize,
    pub map: Vec<usize>,
}

/// The embedded quiver `Q(X)` with arrow `(lam, x)` at index
/// `lam * |X| + x`.
pub fn q_object(obj: &HObject, h_labels: &[String], x_labels: &[String]) -> Quiver {
    let mut labels = Vec::with_capacity(obj.h * obj.size);
    let mut src = Vec::with_capacity(obj.h * obj.size);
    let mut tgt = Vec::with_capacity(obj.h * obj.size);
    for lam in 0..obj.h {
        for x in 0..obj.size {
            labels.push(format!("({},{})", h_labels[lam], x_labels[x]));
            src.push(lam);
            tgt.push(obj.dot(lam, x));
        }
    }
    Quiver {
        h: obj.h,
        labels,
        src,
        tgt,
    }
}

/// The embedded arrow map `Q(f)`.
pub fn q_morphism(f: &HMorphism) -> QuiverMorphism {
    let mut map = Vec::with_capacity(f.h * f.src);
    for lam in 0..f.h {
        for x in 0..f.src {
            map.push(lam * f.dst + f.apply(lam, x));
        }
    }
    QuiverMorphism {
        src_arrows: f.h * f.src,
        dst_arrows: f.h * f.dst,
        map,
    }
}

/// A fiber product quiver together with its pair decomposition and the
/// reverse lookup from component arrows to pair arrows.
#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub quiver: Quiver,
    /// Arrow index in the product -> (arrow in the first factor, arrow in
    /// the second factor).
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl FiberProduct {
    pub fn pair_index(&self, first: usize, second: usize) -> Option<usize> {
        self.index.get(&(first, second)).copied()
    }
}

/// Composable pairs `tgt(a) = src(b)`, enumerated by bucketing the second
/// factor's arrows by source.
pub fn fiber_product(q1: &Quiver, q2: &Quiver) -> Result<FiberProduct> {
    if q1.h != q2.h {
        return Err(Error::MismatchedH);
    }
    let from = q2.arrows_from();
    let mut labels = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for a in 0..q1.len() {
        for &b in &from[q1.tgt[a]] {
            index.insert((a, b), pairs.len());
            pairs.push((a, b));
            labels.push(format!("{}{}", q1.labels[a], q2.labels[b]));
            src.push(q1.src[a]);
            tgt.push(q2.tgt[b]);
        }
    }
    Ok(FiberProduct {
        quiver: Quiver {
            h: q1.h,
            labels,
            src,
            tgt,
        },
        pairs,
        index,
    })
}

/// The unit pairing and the tensor pairing for embedded quivers.
///
/// `phi0` sends a node to the corresponding arrow of `Q(I)`; `phi2` sends
/// a composable pair `((lam, x), (lam . x, y))` to the arrow
/// `(lam, (x, y))` of the embedded tensor, and `phi2_inv` is its inverse.
/// Both directions are total for fiber products built from `q_object`
/// quivers.
#[derive(Debug, Clone)]
pub struct PhiMaps {
    pub phi0: Vec<usize>,
    pub phi2: Vec<usize>,
    pub phi2_inv: Vec<usize>,
}

pub fn phi_maps(x: &HObject, y: &HObject, fp: &FiberProduct) -> PhiMaps {
    let sx = x.size;
    let sy = y.size;
    let mut phi2 = vec![0usize; fp.pairs.len()];
    let mut phi2_inv = vec![usize::MAX; x.h * sx * sy];
    for (p, &(i, j)) in fp.pairs.iter().enumerate() {
        let lam = i / sx;
        let xi = i % sx;
        let yj = j % sy;
        let arrow = lam * (sx * sy) + xi * sy + yj;
        phi2[p] = arrow;
        phi2_inv[arrow] = p;
    }
    PhiMaps {
        phi0: (0..x.h).collect(),
        phi2,
        phi2_inv,
    }
}

/// Conjugates an endomorphism of the embedded tensor by the pairing:
/// the lifted map `phi2^-1 . Q(f) . phi2` on the fiber product's arrows.
pub fn lift_solution(fp: &FiberProduct, phi: &PhiMaps, f: &HMorphism) -> QuiverMorphism {
    let qf = q_morphism(f);
    let map = (0..fp.pairs.len())
        .map(|p| phi.phi2_inv[qf.map[phi.phi2[p]]])
        .collect();
    QuiverMorphism {
        src_arrows: fp.pairs.len(),
        dst_arrows: fp.pairs.len(),
        map,
    }
}

fn endpoint_check(
    name: &'static str,
    tag: &str,
    src_q: &Quiver,
    dst_q: &Quiver,
    f: &QuiverMorphism,
) -> (u64, Option<Witness>) {
    let buckets = src_q.arrows_from();
    scan_lambdas(src_q.h, |lam| {
        let mut cases = 0u64;
        for &a in &buckets[lam] {
            cases += 1;
            let im = f.map[a];
            if dst_q.src[im] != src_q.src[a] || dst_q.tgt[im] != src_q.tgt[a] {
                return (
                    cases,
                    Some(Witness {
                        check: name.into(),
                        lambda: src_q.labels[a].clone(),
                        inputs: vec![tag.into()],
                        lhs: format!(
                            "{} with endpoints {} -> {}",
                            dst_q.labels[im], dst_q.src[im], dst_q.tgt[im]
                        ),
                        rhs: format!("endpoints {} -> {}", src_q.src[a], src_q.tgt[a]),
                    }),
                );
            }
        }
        (cases, None)
    })
}

/// One step of a word acting on a three-arrow chain: applies a lifted
/// pair map to two adjacent arrows, leaving the third alone. Returns
/// `None` when the pair to act on is not composable (possible only for
/// corrupted tables).
fn act_left(
    fp: &FiberProduct,
    f: &QuiverMorphism,
    chain: (usize, usize, usize),
) -> Option<(usize, usize, usize)> {
    let p = fp.pair_index(chain.0, chain.1)?;
    let (a, b) = fp.pairs[f.map[p]];
    Some((a, b, chain.2))
}

fn act_right(
    fp: &FiberProduct,
    f: &QuiverMorphism,
    chain: (usize, usize, usize),
) -> Option<(usize, usize, usize)> {
    let p = fp.pair_index(chain.1, chain.2)?;
    let (b, c) = fp.pairs[f.map[p]];
    Some((chain.0, b, c))
}

fn chain_label(q1: &Quiver, q2: &Quiver, q3: &Quiver, c: Option<(usize, usize, usize)>) -> String {
    match c {
        Some((a, b, x)) => format!("{}{}{}", q1.labels[a], q2.labels[b], q3.labels[x]),
        None => "chain breaks: intermediate pair not composable".into(),
    }
}

/// Runs every quiver-level check for a braiding and, when present, a
/// boundary map: functoriality of the embedding, endpoint preservation,
/// bijectivity and naturality of the pairing, unit coherence, and the
/// braid and reflection equations of the lifted maps over all composable
/// chains. With no boundary map the reflection-side checks are skipped.
pub fn check_quiver_equations(
    s: &Structure,
    m: &ModuleX,
    sig: &TwistTable,
    k: Option<&TwistTable>,
) -> Vec<CheckReport> {
    let n = s.n();
    let h_labels = s.lq().labels();
    let l_obj = s.l_object();
    let x_obj = m.obj.clone();
    let ll_obj = category::tensor_objects(&l_obj, &l_obj).expect("same parameter set");
    let lx_obj = category::tensor_objects(&l_obj, &x_obj).expect("same parameter set");

    let pair_labels_ll: Vec<String> = (0..n * n)
        .map(|p| format!("({},{})", h_labels[p / n], h_labels[p % n]))
        .collect();
    let pair_labels_lx: Vec<String> = (0..n * m.size())
        .map(|p| format!("({},{})", h_labels[p / m.size()], m.labels[p % m.size()]))
        .collect();

    let ql = q_object(&l_obj, h_labels, h_labels);
    let qx = q_object(&x_obj, h_labels, &m.labels);
    let qll = q_object(&ll_obj, h_labels, &pair_labels_ll);
    let qlx = q_object(&lx_obj, h_labels, &pair_labels_lx);

    let sig_m = sig.to_morphism();

    let fp_ll = fiber_product(&ql, &ql).expect("same parameter set");
    let fp_lx = fiber_product(&ql, &qx).expect("same parameter set");
    let phi_ll = phi_maps(&l_obj, &l_obj, &fp_ll);
    let phi_lx = phi_maps(&l_obj, &x_obj, &fp_lx);
    let sig_tilde = lift_solution(&fp_ll, &phi_ll, &sig_m);
    let boundary = k.map(|k| {
        let k_m = k.to_morphism();
        let k_tilde = lift_solution(&fp_lx, &phi_lx, &k_m);
        (k_m, k_tilde)
    });
    const NO_BOUNDARY: &str = "no boundary map: the document provides no family";

    let mut out = Vec::new();

    // functor preserves identities
    {
        let name = "quiver-functor-identity";
        let mut cases = 0u64;
        let mut witness = None;
        for (obj, q) in [(&ll_obj, &qll), (&lx_obj, &qlx)] {
            let qi = q_morphism(&HMorphism::identity(n, obj.size));
            for (a, &im) in qi.map.iter().enumerate() {
                cases += 1;
                if im != a && witness.is_none() {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: q.labels[a].clone(),
                        inputs: vec![],
                        lhs: q.labels[im].clone(),
                        rhs: q.labels[a].clone(),
                    });
                }
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // functor preserves composition: on sigma . sigma and k . k
    {
        let name = "quiver-functor-composition";
        let mut cases = 0u64;
        let mut witness = None;
        let mut instances: Vec<(&HMorphism, &Quiver)> = vec![(&sig_m, &qll)];
        if let Some((k_m, _)) = &boundary {
            instances.push((k_m, &qlx));
        }
        for (f, q) in instances {
            let ff = category::compose_morphisms(f, f).expect("endomorphism composes");
            let lifted_outer = q_morphism(f);
            let composed_inside = q_morphism(&ff);
            for a in 0..composed_inside.map.len() {
                cases += 1;
                let two_step = lifted_outer.map[lifted_outer.map[a]];
                if composed_inside.map[a] != two_step && witness.is_none() {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: q.labels[a].clone(),
                        inputs: vec![],
                        lhs: q.labels[composed_inside.map[a]].clone(),
                        rhs: q.labels[two_step].clone(),
                    });
                }
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // endpoint preservation for the embedded maps and the lifts
    {
        let name = "quiver-morphism-endpoints";
        let mut cases = 0u64;
        let mut witness = None;
        let mut checks: Vec<(&str, &Quiver, &Quiver, QuiverMorphism)> = vec![
            ("embedded braiding", &qll, &qll, q_morphism(&sig_m)),
            (
                "lifted braiding",
                &fp_ll.quiver,
                &fp_ll.quiver,
                sig_tilde.clone(),
            ),
        ];
        if let Some((k_m, k_tilde)) = &boundary {
            checks.push(("embedded boundary", &qlx, &qlx, q_morphism(k_m)));
            checks.push((
                "lifted boundary",
                &fp_lx.quiver,
                &fp_lx.quiver,
                k_tilde.clone(),
            ));
        }
        for (tag, src_q, dst_q, f) in &checks {
            let (c, w) = endpoint_check(name, tag, src_q, dst_q, f);
            cases += c;
            if witness.is_none() {
                witness = w;
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // the pairing is a bijection in both directions
    {
        let name = "quiver-pairing-bijective";
        let mut cases = 0u64;
        let mut witness = None;
        for (tag, fp, phi, q_tensor) in [
            ("pairs of the braiding carrier", &fp_ll, &phi_ll, &qll),
            ("pairs of the boundary carrier", &fp_lx, &phi_lx, &qlx),
        ] {
            if fp.pairs.len() != q_tensor.len() && witness.is_none() {
                witness = Some(Witness {
                    check: name.into(),
                    lambda: "-".into(),
                    inputs: vec![tag.into()],
                    lhs: format!("{} composable pairs", fp.pairs.len()),
                    rhs: format!("{} tensor arrows", q_tensor.len()),
                });
            }
            for p in 0..fp.pairs.len() {
                cases += 1;
                if phi.phi2_inv[phi.phi2[p]] != p && witness.is_none() {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: fp.quiver.labels[p].clone(),
                        inputs: vec![tag.into()],
                        lhs: fp.quiver.labels[phi.phi2_inv[phi.phi2[p]]].clone(),
                        rhs: fp.quiver.labels[p].clone(),
                    });
                }
            }
            for a in 0..q_tensor.len() {
                cases += 1;
                if (phi.phi2_inv[a] == usize::MAX || phi.phi2[phi.phi2_inv[a]] != a)
                    && witness.is_none()
                {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: q_tensor.labels[a].clone(),
                        inputs: vec![tag.into()],
                        lhs: "no composable pair maps to this arrow".into(),
                        rhs: "a unique pair must".into(),
                    });
                }
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // naturality of the pairing: phi2 . (Q(f) x Q(g)) = Q(f (x) g) . phi2
    {
        let name = "quiver-pairing-naturality";
        let mut cases = 0u64;
        let mut witness = None;

        let id_l = HMorphism::identity(n, n);
        let mut instances: Vec<(&HObject, &HObject, &HMorphism, &HMorphism, &Quiver, &Quiver)> =
            vec![(&l_obj, &ll_obj, &id_l, &sig_m, &ql, &qll)];
        if let Some((k_m, _)) = &boundary {
            instances.push((&ll_obj, &lx_obj, &sig_m, k_m, &qll, &qlx));
        }
        for (x, y, f, g, q1, q2) in instances {
            let fp = fiber_product(q1, q2).expect("same parameter set");
            let phi = phi_maps(x, y, &fp);
            let qf = q_morphism(f);
            let qg = q_morphism(g);
            let fg = category::tensor_morphisms(x, y, f, g).expect("shapes agree");
            let qfg = q_morphism(&fg);
            for (p, &(i, j)) in fp.pairs.iter().enumerate() {
                cases += 1;
                let componentwise = fp.pair_index(qf.map[i], qg.map[j]);
                let lhs = componentwise.map(|pp| phi.phi2[pp]);
                let rhs = qfg.map[phi.phi2[p]];
                if lhs != Some(rhs) && witness.is_none() {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: fp.quiver.labels[p].clone(),
                        inputs: vec![],
                        lhs: lhs
                            .map(|a| {
                                format!("tensor arrow {a}")
                            })
                            .unwrap_or_else(|| "image pair not composable".into()),
                        rhs: format!("tensor arrow {rhs}"),
                    });
                }
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // unit coherence: pairing a node's unit arrow with an arrow and
    // collapsing through the unitor is the identity
    {
        let name = "quiver-unit-coherence";
        let mut cases = 0u64;
        let mut witness = None;
        let i_obj = HObject::unit(n);
        let qi = q_object(&i_obj, h_labels, &["*".to_string()]);
        for (obj, q) in [(&l_obj, &ql), (&x_obj, &qx)] {
            let fp = fiber_product(&qi, q).expect("same parameter set");
            let phi = phi_maps(&i_obj, obj, &fp);
            let unitor = q_morphism(&category::left_unitor(n, obj.size));
            for a in 0..q.len() {
                cases += 1;
                let pair = fp
                    .pair_index(phi.phi0[q.src[a]], a)
                    .expect("unit arrow composes with everything at its target");
                let back = unitor.map[phi.phi2[pair]];
                if back != a && witness.is_none() {
                    witness = Some(Witness {
                        check: name.into(),
                        lambda: q.labels[a].clone(),
                        inputs: vec![],
                        lhs: q.labels[back].clone(),
                        rhs: q.labels[a].clone(),
                    });
                }
            }
        }
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // braid relation for the lifted braiding over composable chains
    {
        let name = "quiver-braid-relation";
        let from_l = ql.arrows_from();
        let (cases, witness) = scan_lambdas(n, |lam| {
            let mut cases = 0u64;
            for &e1 in &from_l[lam] {
                for &e2 in &from_l[ql.tgt[e1]] {
                    for &e3 in &from_l[ql.tgt[e2]] {
                        cases += 1;
                        let start = (e1, e2, e3);
                        let lhs = act_left(&fp_ll, &sig_tilde, start)
                            .and_then(|c| act_right(&fp_ll, &sig_tilde, c))
                            .and_then(|c| act_left(&fp_ll, &sig_tilde, c));
                        let rhs = act_right(&fp_ll, &sig_tilde, start)
                            .and_then(|c| act_left(&fp_ll, &sig_tilde, c))
                            .and_then(|c| act_right(&fp_ll, &sig_tilde, c));
                        if lhs != rhs || lhs.is_none() {
                            return (
                                cases,
                                Some(Witness {
                                    check: name.into(),
                                    lambda: s.label(lam).into(),
                                    inputs: vec![
                                        ql.labels[e1].clone(),
                                        ql.labels[e2].clone(),
                                        ql.labels[e3].clone(),
                                    ],
                                    lhs: chain_label(&ql, &ql, &ql, lhs),
                                    rhs: chain_label(&ql, &ql, &ql, rhs),
                                }),
                            );
                        }
                    }
                }
            }
            (cases, None)
        });
        out.push(CheckReport::from_scan(name, cases, witness));
    }

    // reflection equation for the lifted pair over composable chains
    if let Some((_, k_tilde)) = &boundary {
        let name = "quiver-reflection-equation";
        let from_l = ql.arrows_from();
        let from_x = qx.arrows_from();
        let (cases, witness) = scan_lambdas(n, |lam| {
            let mut cases = 0u64;
            for &e1 in &from_l[lam] {
                for &e2 in &from_l[ql.tgt[e1]] {
                    for &e3 in &from_x[ql.tgt[e2]] {
                        cases += 1;
                        let start = (e1, e2, e3);
                        let a_then_b = |c| {
                            act_left(&fp_ll, &sig_tilde, c)
                                .and_then(|c| act_right(&fp_lx, k_tilde, c))
                        };
                        let b_then_a = |c| {
                            act_right(&fp_lx, k_tilde, c)
                                .and_then(|c| act_left(&fp_ll, &sig_tilde, c))
                        };
                        let lhs = a_then_b(start).and_then(a_then_b);
                        let rhs = b_then_a(start).and_then(b_then_a);
                        if lhs != rhs || lhs.is_none() {
                            return (
                                cases,
                                Some(Witness {
                                    check: name.into(),
                                    lambda: s.label(lam).into(),
                                    inputs: vec![
                                        ql.labels[e1].clone(),
                                        ql.labels[e2].clone(),
                                        qx.labels[e3].clone(),
                                    ],
                                    lhs: chain_label(&ql, &ql, &qx, lhs),
                                    rhs: chain_label(&ql, &ql, &qx, rhs),
                                }),
                            );
                        }
                    }
                }
            }
            (cases, None)
        });
        out.push(CheckReport::from_scan(name, cases, witness));
    } else {
        out.push(CheckReport::skip("quiver-reflection-equation", NO_BOUNDARY));
    }

    out
}
