//! Finite left quasigroups with unit, finite groups, and endomorphism
//! enumeration.
//!
//! Tables are stored flat in row-major order: the product of row `a` and
//! column `b` lives at index `a * n + b`. All elements are `usize` indices
//! into a label vector; parsing label strings into indices happens at the
//! document layer.

use crate::error::{Error, Result};

/// Hard limit on group order accepted by [`build_named_group`] and
/// [`group_from_table`]. Everything downstream is exhaustive, so this is a
/// safety rail, not a tuning knob.
pub const GROUP_ORDER_CAP: usize = 24;

/// Default cap for [`enumerate_endomorphisms`]. Enumeration is
/// generator-based, so the bound is on the group order, not on `n^n`.
pub const ENDOMORPHISM_ORDER_CAP: usize = 12;

/// A finite left quasigroup with a two-sided unit.
///
/// Every row of the multiplication table is a permutation, so left
/// division `a \ c` (the unique `b` with `a b = c`) is total. Nothing is
/// assumed about columns or associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftQuasigroup {
    labels: Vec<String>,
    table: Vec<usize>,
    ldiv: Vec<usize>,
    unit: usize,
}

impl LeftQuasigroup {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// The product `a b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n() + b]
    }

    /// Left division: the unique `b` with `a b = c`.
    pub fn left_divide(&self, a: usize, c: usize) -> usize {
        self.ldiv[a * self.n() + c]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Checks associativity of the quasigroup product itself and returns
    /// the lexicographically least triple `(a, b, c)` with
    /// `(a b) c != a (b c)`, scanning in index order.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Validates a label list and a flat row-major table as a left quasigroup
/// with a two-sided unit.
///
/// The unit is not declared in the input; it is the element whose row acts
/// as the identity. A row-unit whose column fails `a e = a` is reported as
/// [`Error::UnitLawViolated`].
pub fn validate_left_quasigroup(labels: Vec<String>, table: Vec<usize>) -> Result<LeftQuasigroup> {
    let n = labels.len();
    check_labels_distinct(&labels)?;
    if table.len() != n * n {
        return Err(Error::TypeMismatch(format!(
            "expected a {n} x {n} table, got {} entries",
            table.len()
        )));
    }
    for (a, row) in table.chunks(n).enumerate() {
        if !is_permutation(row, n) {
            return Err(Error::RowNotPermutation(labels[a].clone()));
        }
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|b| table[e * n + b] == b))
        .ok_or(Error::NoUnit)?;
    for a in 0..n {
        if table[a * n + unit] != a {
            return Err(Error::UnitLawViolated(labels[a].clone()));
        }
    }
    let mut ldiv = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            ldiv[a * n + table[a * n + b]] = b;
        }
    }
    Ok(LeftQuasigroup {
        labels,
        table,
        ldiv,
        unit,
    })
}

/// A finite group with a flat multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    inv: Vec<usize>,
    unit: usize,
    /// `Some(k)` when the group was built as the symmetric group on `k`
    /// points; enables cycle-notation input for element labels.
    degree: Option<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves an element label, also accepting cycle notation like
    /// `"(123)"` or `"(12)(34)"` when the group is a symmetric group.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        if let Some(i) = self.index(label) {
            return Ok(i);
        }
        if let Some(deg) = self.degree {
            let perm = perm_from_cycles(label, deg)?;
            let w = word_from_perm(&perm);
            if let Some(i) = self.index(&w) {
                return Ok(i);
            }
        }
        Err(Error::TypeMismatch(format!(
            "unknown group element `{label}`"
        )))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Product of several elements, leftmost applied last (so
    /// `prod(&[a, b, c])` is `a b c` with `c` acting first under the
    /// permutation reading).
    pub fn prod(&self, xs: &[usize]) -> usize {
        let mut r = xs[0];
        for &x in &xs[1..] {
            r = self.mul(r, x);
        }
        r
    }
}

/// The ternary operation `a b^{-1} c`.
///
/// This is the heap operation of the group: it is what survives of the
/// multiplication when the choice of unit is forgotten, and it is the only
/// way the group ever enters the braiding construction.
pub fn mu1(g: &FiniteGroup, a: usize, b: usize, c: usize) -> usize {
    g.mul(g.mul(a, g.inv(b)), c)
}

/// Validates a label list and a flat table as a group.
pub fn group_from_table(labels: Vec<String>, table: Vec<usize>) -> Result<FiniteGroup> {
    let n = labels.len();
    check_labels_distinct(&labels)?;
    if n > GROUP_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "group order".into(),
            actual: n,
            limit: GROUP_ORDER_CAP,
        });
    }
    if table.len() != n * n {
        return Err(Error::TypeMismatch(format!(
            "expected a {n} x {n} table, got {} entries",
            table.len()
        )));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab_c = table[table[a * n + b] * n + c];
                let a_bc = table[a * n + table[b * n + c]];
                if ab_c != a_bc {
                    return Err(Error::NotAssociative(
                        labels[a].clone(),
                        labels[b].clone(),
                        labels[c].clone(),
                    ));
                }
            }
        }
    }
    let unit = (0..n)
        .find(|&e| {
            (0..n).all(|b| table[e * n + b] == b) && (0..n).all(|a| table[a * n + e] == a)
        })
        .ok_or(Error::NoUnit)?;
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a * n + b] == unit && table[b * n + a] == unit) {
            Some(b) => inv[a] = b,
            None => return Err(Error::NoInverse(labels[a].clone())),
        }
    }
    Ok(FiniteGroup {
        labels,
        table,
        inv,
        unit,
        degree: None,
    })
}

/// Builds a group by name: `"Z1"` through `"Z24"` for cyclic groups
/// (labels `"0"`, `"1"`, ...) and `"S1"` through `"S4"` for symmetric
/// groups (labels are image words such as `"231"`, in lexicographic
/// order).
pub fn build_named_group(name: &str) -> Result<FiniteGroup> {
    if let Some(ns) = name.strip_prefix('Z') {
        let n: usize = ns
            .parse()
            .map_err(|_| Error::TypeMismatch(format!("unknown group name `{name}`")))?;
        if n == 0 {
            return Err(Error::TypeMismatch(format!("unknown group name `{name}`")));
        }
        if n > GROUP_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "group order".into(),
                actual: n,
                limit: GROUP_ORDER_CAP,
            });
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let mut g = group_from_table(labels, table)?;
        g.degree = None;
        return Ok(g);
    }
    if let Some(ks) = name.strip_prefix('S') {
        let k: usize = ks
            .parse()
            .map_err(|_| Error::TypeMismatch(format!("unknown group name `{name}`")))?;
        if !(1..=4).contains(&k) {
            return Err(Error::CapExceeded {
                what: "symmetric group degree".into(),
                actual: k,
                limit: 4,
            });
        }
        let perms = all_permutations(k);
        let labels: Vec<String> = perms.iter().map(|p| word_from_perm(p)).collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut table = vec![0usize; n * n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                table[i * n + j] = index(&compose_perms(p, q));
            }
        }
        let mut g = group_from_table(labels, table)?;
        g.degree = Some(k);
        return Ok(g);
    }
    Err(Error::TypeMismatch(format!("unknown group name `{name}`")))
}

/// Enumerates all group endomorphisms of `g` as image vectors, in
/// lexicographic order.
///
/// A minimal-by-greedy generating set is found first; candidate images for
/// the generators are extended to the whole group by closing under
/// multiplication, and each completed map is verified against the full
/// multiplication table. This stays cheap up to the cap even though the
/// naive `n^n` search space would not.
pub fn enumerate_endomorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group order for endomorphism enumeration".into(),
            actual: n,
            limit: cap,
        });
    }
    let gens = greedy_generators(g);
    let k = gens.len();
    let mut out = Vec::new();
    let mut images = vec![0usize; k];
    loop {
        if let Some(map) = extend_to_endomorphism(g, &gens, &images) {
            out.push(map);
        }
        // odometer over the image tuple
        let mut pos = k;
        while pos > 0 {
            images[pos - 1] += 1;
            if images[pos - 1] < n {
                break;
            }
            images[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Greedy generating set: repeatedly adjoin the smallest element outside
/// the subgroup generated so far.
fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = closure(g, &gens);
    while closed.iter().filter(|&&b| b).count() < n {
        let next = (0..n).find(|&x| !closed[x]).unwrap();
        gens.push(next);
        closed = closure(g, &gens);
    }
    gens
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let n = g.order();
    let mut seen = vec![false; n];
    seen[g.unit()] = true;
    let mut stack = vec![g.unit()];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Extends generator images to a full map by word closure, then verifies
/// the homomorphism property on the whole table.
fn extend_to_endomorphism(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[g.unit()] = g.unit();
    let mut queue = vec![g.unit()];
    while let Some(x) = queue.pop() {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let img = g.mul(map[x], images[i]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

fn check_labels_distinct(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn is_permutation(row: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &v in row {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    row.len() == n
}

// ---------------------------------------------------------------------------
// permutation helpers (0-based image vectors; `p` applied after `q`)

pub fn compose_perms(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut r = vec![0usize; p.len()];
    for (i, &v) in p.iter().enumerate() {
        r[v] = i;
    }
    r
}

pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..k {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Renders a permutation as its image word, 1-based: the identity on three
/// points is `"123"`, the transposition of the first two points is `"213"`.
pub fn word_from_perm(p: &[usize]) -> String {
    p.iter().map(|&v| (v + 1).to_string()).collect()
}

/// Parses cycle notation over `1..=degree`, e.g. `"(123)"`, `"(12)(34)"`.
/// The identity may be written `"()"`, `"id"`, or `"e"`.
pub fn perm_from_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let bad = || Error::TypeMismatch(format!("cannot parse `{s}` as a permutation"));
    let mut p: Vec<usize> = (0..degree).collect();
    let t = s.trim();
    if t == "()" || t == "id" || t == "e" {
        return Ok(p);
    }
    if !t.starts_with('(') || !t.ends_with(')') {
        return Err(bad());
    }
    let mut seen = vec![false; degree];
    for cyc in t[1..t.len() - 1].split(")(") {
        let pts: Vec<usize> = cyc
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        if pts.iter().any(|&d| d == 0 || d > degree) || pts.is_empty() {
            return Err(bad());
        }
        for w in 0..pts.len() {
            let from = pts[w] - 1;
            let to = pts[(w + 1) % pts.len()] - 1;
            if seen[from] {
                return Err(bad()); // a point may appear only once
            }
            seen[from] = true;
            p[from] = to;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn table_one() -> LeftQuasigroup {
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
        validate_left_quasigroup(labels, rows.concat()).unwrap()
    }

    #[test]
    fn six_element_table_validates() {
        let q = table_one();
        assert_eq!(q.unit(), 0);
        assert_eq!(q.mul(2, 3), 1); // l2 l3 = l1
        assert_eq!(q.mul(3, 2), 0); // l3 l2 = e
        assert_eq!(q.mul(q.mul(1, 2), 3), 2); // (l1 l2) l3 = l2
        assert_eq!(q.mul(1, q.mul(2, 3)), 5); // l1 (l2 l3) = l5
        assert_eq!(q.left_divide(1, 3), 2);
        assert_eq!(q.left_divide(1, 0), 5);
    }

    #[test]
    fn six_element_table_is_not_associative() {
        let q = table_one();
        assert_eq!(q.associativity_witness(), Some((1, 1, 1)));
    }

    #[test]
    fn left_division_inverts_multiplication() {
        let q = table_one();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.left_divide(a, q.mul(a, b)), b);
                assert_eq!(q.mul(a, q.left_divide(a, b)), b);
            }
        }
    }

    #[test]
    fn rejects_duplicate_labels() {
        let labels = vec!["a".into(), "a".into()];
        let err = validate_left_quasigroup(labels, vec![0, 1, 1, 0]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn rejects_non_permutation_row() {
        let labels = vec!["e".into(), "a".into()];
        let err = validate_left_quasigroup(labels, vec![0, 1, 1, 1]).unwrap_err();
        assert_eq!(err, Error::RowNotPermutation("a".into()));
    }

    #[test]
    fn rejects_missing_unit() {
        // both rows are the swap, so no row acts as the identity
        let labels = vec!["a".into(), "b".into()];
        let err = validate_left_quasigroup(labels, vec![1, 0, 1, 0]).unwrap_err();
        assert_eq!(err, Error::NoUnit);
    }

    #[test]
    fn rejects_one_sided_unit() {
        // row 0 is the identity but column 0 is not: 3 elements,
        // table[1][0] = 2.
        let labels = vec!["e".into(), "a".into(), "b".into()];
        let table = vec![0, 1, 2, 2, 0, 1, 1, 2, 0];
        let err = validate_left_quasigroup(labels, table).unwrap_err();
        assert_eq!(err, Error::UnitLawViolated("a".into()));
    }

    #[test]
    fn symmetric_group_labels_and_composition() {
        let g = build_named_group("S3").unwrap();
        assert_eq!(
            g.labels(),
            &["123", "132", "213", "231", "312", "321"].map(String::from)
        );
        // (12) composed with (123): apply (123) first, then (12); the
        // result is the image word of (132).
        let p12 = g.resolve("(12)").unwrap();
        let p123 = g.resolve("(123)").unwrap();
        assert_eq!(g.label(g.mul(p12, p123)), "132");
        assert_eq!(g.label(p12), "213");
        assert_eq!(g.label(p123), "231");
    }

    #[test]
    fn mu1_matches_hand_computation() {
        let g = build_named_group("S3").unwrap();
        let a = g.resolve("(12)").unwrap();
        let b = g.resolve("(123)").unwrap();
        let c = g.resolve("(23)").unwrap();
        assert_eq!(g.label(mu1(&g, a, b, c)), "312");
    }

    #[test]
    fn cyclic_group_by_name() {
        let z3 = build_named_group("Z3").unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.mul(1, 2), 0);
        assert_eq!(z3.inv(1), 2);
        assert!(z3.is_abelian());
        assert!(build_named_group("Z25").is_err());
        assert!(build_named_group("Q8").is_err());
    }

    #[test]
    fn group_table_validation_errors() {
        let labels = || vec!["0".to_string(), "1".to_string()];
        // constant-per-column table: (00)0 = 0 but 0(00) = 1
        let err = group_from_table(labels(), vec![1, 1, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
        // associative as a magma, has a unit, but 1 has no inverse
        let err = group_from_table(labels(), vec![0, 1, 1, 1]).unwrap_err();
        assert_eq!(err, Error::NoInverse("1".into()));
    }

    #[test]
    fn endomorphism_counts() {
        let s3 = build_named_group("S3").unwrap();
        let endos = enumerate_endomorphisms(&s3, ENDOMORPHISM_ORDER_CAP).unwrap();
        assert_eq!(endos.len(), 10);
        assert_eq!(endos[0], vec![0, 0, 0, 0, 0, 0]);
        assert_eq!(endos[1], vec![0, 1, 1, 0, 0, 1]);
        assert_eq!(endos[2], vec![0, 1, 2, 3, 4, 5]);
        for m in &endos {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(m[s3.mul(a, b)], s3.mul(m[a], m[b]));
                }
            }
        }

        let z3 = build_named_group("Z3").unwrap();
        assert_eq!(enumerate_endomorphisms(&z3, 12).unwrap().len(), 3);
    }

    #[test]
    fn endomorphism_cap_is_enforced() {
        let s4 = build_named_group("S4").unwrap();
        let err = enumerate_endomorphisms(&s4, ENDOMORPHISM_ORDER_CAP).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn cycle_notation_round_trips() {
        assert_eq!(perm_from_cycles("(123)", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(perm_from_cycles("(12)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(perm_from_cycles("()", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(perm_from_cycles("(12)(34)", 4).unwrap(), vec![1, 0, 3, 2]);
        assert!(perm_from_cycles("(15)", 3).is_err());
        assert!(perm_from_cycles("(11)", 3).is_err());
        assert!(perm_from_cycles("nonsense", 3).is_err());
    }
}
