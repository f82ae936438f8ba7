//! Finite groupoids: validation, generators and the JSON file format.
//!
//! Composition is written right-to-left like function composition:
//! `comp(p, q) = pq` is defined exactly when `src(p) = tgt(q)`, and then
//! `src(pq) = src(q)`, `tgt(pq) = tgt(p)`. Arrows and units are opaque
//! string identifiers kept in lexicographic order, which fixes every basis
//! built from a groupoid downstream.
//!
//! Validation is exhaustive, including an `O(|arrows|³)` associativity scan.
//! That is fine for the handful of arrows used here.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A validated finite groupoid. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    units: Vec<String>,
    arrows: Vec<Arrow>,
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    unit_arrow: Vec<usize>,
}

/// Raw, unvalidated description of a groupoid by string identifiers.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GroupoidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub units: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub comp: Vec<(String, String, String)>,
    #[serde(default)]
    pub inv: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

fn unit_arrow_id(unit: &str) -> String {
    format!("id:{unit}")
}

impl Groupoid {
    /// Build and validate from string-level data. Unit arrows missing from
    /// `arrows` are inferred under the id `"id:<unit>"` together with their
    /// compositions and inverses.
    pub fn from_file(file: &GroupoidFile) -> Result<Groupoid> {
        let units: BTreeSet<String> = file.units.iter().cloned().collect();
        if units.len() != file.units.len() {
            return Err(Error::Groupoid("duplicate unit identifier".into()));
        }
        let units: Vec<String> = units.into_iter().collect();
        let unit_idx: HashMap<&str, usize> =
            units.iter().enumerate().map(|(i, u)| (u.as_str(), i)).collect();

        let mut specs: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for a in &file.arrows {
            let src = *unit_idx
                .get(a.src.as_str())
                .ok_or_else(|| Error::Groupoid(format!("arrow {} has unknown source {}", a.id, a.src)))?;
            let tgt = *unit_idx
                .get(a.tgt.as_str())
                .ok_or_else(|| Error::Groupoid(format!("arrow {} has unknown target {}", a.id, a.tgt)))?;
            if specs.insert(a.id.clone(), (src, tgt)).is_some() {
                return Err(Error::Groupoid(format!("duplicate arrow {}", a.id)));
            }
        }

        let mut comp_ids: BTreeMap<(String, String), String> = BTreeMap::new();
        for (p, q, pq) in &file.comp {
            if comp_ids.insert((p.clone(), q.clone()), pq.clone()).is_some() {
                return Err(Error::Groupoid(format!("composition ({p}, {q}) declared twice")));
            }
        }
        let mut inv_ids = file.inv.clone();

        // locate or infer the identity arrow at every unit
        for (u, name) in units.iter().enumerate() {
            let explicit = unit_arrow_id(name);
            if specs.contains_key(&explicit) {
                continue;
            }
            let found = specs.iter().any(|(id, &(s, t))| {
                s == u && t == u && comp_ids.get(&(id.clone(), id.clone())) == Some(id)
            });
            if found {
                continue;
            }
            specs.insert(explicit.clone(), (u, u));
            let others: Vec<(String, (usize, usize))> =
                specs.iter().map(|(k, v)| (k.clone(), *v)).collect();
            for (id, (s, t)) in others {
                if s == u {
                    comp_ids.entry((id.clone(), explicit.clone())).or_insert_with(|| id.clone());
                }
                if t == u {
                    comp_ids.entry((explicit.clone(), id.clone())).or_insert_with(|| id.clone());
                }
            }
            inv_ids.entry(explicit.clone()).or_insert_with(|| explicit.clone());
        }

        for ((p, q), pq) in &comp_ids {
            for id in [p, q, pq] {
                if !specs.contains_key(id) {
                    return Err(Error::Groupoid(format!("composition ({p}, {q}, {pq}) names unknown arrow {id}")));
                }
            }
        }

        let arrows: Vec<Arrow> =
            specs.iter().map(|(id, &(src, tgt))| Arrow { id: id.clone(), src, tgt }).collect();
        let idx: HashMap<&str, usize> =
            arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
        let n = arrows.len();

        let mut comp = vec![None; n * n];
        for ((p, q), pq) in &comp_ids {
            let (pi, qi) = (idx[p.as_str()], idx[q.as_str()]);
            if arrows[pi].src != arrows[qi].tgt {
                return Err(Error::Groupoid(format!(
                    "comp({p}, {q}) = {pq} declared but src({p}) != tgt({q})"
                )));
            }
            comp[pi * n + qi] = Some(idx[pq.as_str()]);
        }

        let mut inv = Vec::with_capacity(n);
        for a in &arrows {
            let target = inv_ids
                .get(&a.id)
                .ok_or_else(|| Error::Groupoid(format!("missing inverse of {}", a.id)))?;
            let t = *idx
                .get(target.as_str())
                .ok_or_else(|| Error::Groupoid(format!("inverse of {} is unknown arrow {target}", a.id)))?;
            inv.push(t);
        }

        let mut unit_arrow = Vec::with_capacity(units.len());
        for (u, name) in units.iter().enumerate() {
            let explicit = unit_arrow_id(name);
            let ua = match idx.get(explicit.as_str()) {
                Some(&i) => i,
                None => (0..n)
                    .find(|&i| arrows[i].src == u && arrows[i].tgt == u && comp[i * n + i] == Some(i))
                    .expect("unit arrow located or inferred above"),
            };
            unit_arrow.push(ua);
        }

        let g = Groupoid { units, arrows, comp, inv, unit_arrow };
        g.validate()?;
        Ok(g)
    }

    pub fn parse(text: &str) -> Result<Groupoid> {
        let file: GroupoidFile = serde_json::from_str(text)?;
        if let Some(kind) = &file.kind {
            if kind != "groupoid" {
                return Err(Error::Parse(format!("expected kind \"groupoid\", found {kind:?}")));
            }
        }
        Groupoid::from_file(&file)
    }

    pub fn to_file(&self) -> GroupoidFile {
        let n = self.arrows.len();
        let mut comp = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if let Some(r) = self.comp[p * n + q] {
                    comp.push((self.arrows[p].id.clone(), self.arrows[q].id.clone(), self.arrows[r].id.clone()));
                }
            }
        }
        GroupoidFile {
            kind: Some("groupoid".into()),
            units: self.units.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: self.units[a.src].clone(),
                    tgt: self.units[a.tgt].clone(),
                })
                .collect(),
            comp,
            inv: self
                .arrows
                .iter()
                .enumerate()
                .map(|(i, a)| (a.id.clone(), self.arrows[self.inv[i]].id.clone()))
                .collect(),
        }
    }

    /// Exhaustive check of every groupoid axiom, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        let id = |p: usize| &self.arrows[p].id;
        let fail = |msg: String| Err(Error::Groupoid(msg));

        for p in 0..n {
            for q in 0..n {
                let composable = self.src(p) == self.tgt(q);
                match self.comp[p * n + q] {
                    None if composable => {
                        return fail(format!("comp({}, {}) is undefined although src = tgt", id(p), id(q)))
                    }
                    Some(_) if !composable => {
                        return fail(format!("comp({}, {}) is defined although src != tgt", id(p), id(q)))
                    }
                    Some(r) if self.src(r) != self.src(q) || self.tgt(r) != self.tgt(p) => {
                        return fail(format!("comp({}, {}) = {} has wrong source or target", id(p), id(q), id(r)))
                    }
                    _ => {}
                }
            }
        }
        for (u, &e) in self.unit_arrow.iter().enumerate() {
            if self.src(e) != u || self.tgt(e) != u {
                return fail(format!("unit arrow {} is not a loop at its unit", id(e)));
            }
        }
        for p in 0..n {
            let left = self.unit_arrow[self.tgt(p)];
            let right = self.unit_arrow[self.src(p)];
            if self.compose(p, right) != Some(p) {
                return fail(format!("right unit law fails: ({}, {})", id(p), id(right)));
            }
            if self.compose(left, p) != Some(p) {
                return fail(format!("left unit law fails: ({}, {})", id(left), id(p)));
            }
            let pi = self.inv[p];
            if self.inv[pi] != p {
                return fail(format!("inverse is not an involution at {}", id(p)));
            }
            if self.compose(p, pi) != Some(left) {
                return fail(format!("p p^-1 != unit for ({}, {})", id(p), id(pi)));
            }
            if self.compose(pi, p) != Some(right) {
                return fail(format!("p^-1 p != unit for ({}, {})", id(pi), id(p)));
            }
        }
        for p in 0..n {
            for q in 0..n {
                let Some(pq) = self.compose(p, q) else { continue };
                for r in 0..n {
                    let Some(qr) = self.compose(q, r) else { continue };
                    if self.compose(pq, r) != self.compose(p, qr) {
                        return fail(format!("associativity fails on ({}, {}, {})", id(p), id(q), id(r)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_units(&self) -> usize {
        self.units.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, p: usize) -> usize {
        self.arrows[p].src
    }

    pub fn tgt(&self, p: usize) -> usize {
        self.arrows[p].tgt
    }

    pub fn compose(&self, p: usize, q: usize) -> Option<usize> {
        self.comp[p * self.arrows.len() + q]
    }

    pub fn inv(&self, p: usize) -> usize {
        self.inv[p]
    }

    pub fn unit_arrow(&self, u: usize) -> usize {
        self.unit_arrow[u]
    }

    pub fn is_unit_arrow(&self, p: usize) -> bool {
        self.unit_arrow[self.src(p)] == p
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn arrow_ids(&self) -> Vec<String> {
        self.arrows.iter().map(|a| a.id.clone()).collect()
    }

    /// Whether every composable pair commutes.
    pub fn composable_pairs_commute(&self) -> bool {
        let n = self.arrows.len();
        (0..n).all(|p| (0..n).all(|q| self.compose(p, q) == self.compose(q, p)))
    }
}

/// The pair groupoid on `{1..n}`: arrows `(i,j)` from `j` to `i`.
pub fn pair_groupoid(n: usize) -> Groupoid {
    assert!(n >= 1, "pair groupoid needs at least one unit");
    let label = |i: usize, j: usize| format!("({i},{j})");
    let mut file = GroupoidFile { kind: None, ..Default::default() };
    for i in 1..=n {
        file.units.push(i.to_string());
        for j in 1..=n {
            file.arrows.push(ArrowSpec { id: label(i, j), src: j.to_string(), tgt: i.to_string() });
            file.inv.insert(label(i, j), label(j, i));
            for k in 1..=n {
                file.comp.push((label(i, j), label(j, k), label(i, k)));
            }
        }
    }
    // (i,i) is the identity arrow at i; it is detected as the idempotent loop
    Groupoid::from_file(&file).expect("pair groupoid is valid")
}

/// One-object groupoid of a finite group given by its Cayley table
/// (`table[a][b]` is the index of `ab`).
pub fn group_groupoid(labels: &[String], table: &[Vec<usize>]) -> Result<Groupoid> {
    let n = labels.len();
    let bad = |msg: &str| Err(Error::Groupoid(format!("not a group table: {msg}")));
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return bad("table must be square with entries in range");
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != n {
        return bad("duplicate labels");
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
        return bad("no identity element");
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return bad("not associative");
                }
            }
        }
    }
    let mut inv = BTreeMap::new();
    for a in 0..n {
        let Some(b) = (0..n).find(|&b| table[a][b] == e && table[b][a] == e) else {
            return bad("element without inverse");
        };
        inv.insert(labels[a].clone(), labels[b].clone());
    }
    let unit = "*".to_string();
    let file = GroupoidFile {
        kind: None,
        units: vec![unit.clone()],
        arrows: labels
            .iter()
            .map(|l| ArrowSpec { id: l.clone(), src: unit.clone(), tgt: unit.clone() })
            .collect(),
        comp: (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (labels[a].clone(), labels[b].clone(), labels[table[a][b]].clone()))
            .collect(),
        inv,
    };
    Groupoid::from_file(&file)
}

/// ℤ/m as a one-object groupoid with elements `e, g, g2, …`.
pub fn cyclic_group(m: usize) -> Groupoid {
    assert!(m >= 1);
    let labels: Vec<String> = (0..m)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    group_groupoid(&labels, &table).expect("cyclic group table is valid")
}

fn relabel(g: &Groupoid, prefix: &str, file: &mut GroupoidFile) {
    let f = g.to_file();
    let p = |s: &String| format!("{prefix}{s}");
    file.units.extend(f.units.iter().map(p));
    file.arrows.extend(f.arrows.iter().map(|a| ArrowSpec { id: p(&a.id), src: p(&a.src), tgt: p(&a.tgt) }));
    file.comp.extend(f.comp.iter().map(|(a, b, c)| (p(a), p(b), p(c))));
    file.inv.extend(f.inv.iter().map(|(a, b)| (p(a), p(b))));
}

/// Disjoint union; the two sides are relabelled with prefixes `1.` and `2.`.
pub fn disjoint_union(g1: &Groupoid, g2: &Groupoid) -> Groupoid {
    let mut file = GroupoidFile::default();
    relabel(g1, "1.", &mut file);
    relabel(g2, "2.", &mut file);
    Groupoid::from_file(&file).expect("disjoint union of groupoids is a groupoid")
}

/// Cartesian product; arrows are labelled `<p,q>`.
pub fn product(g1: &Groupoid, g2: &Groupoid) -> Groupoid {
    let pair = |a: &str, b: &str| format!("<{a},{b}>");
    let mut file = GroupoidFile::default();
    for u in &g1.units {
        for v in &g2.units {
            file.units.push(pair(u, v));
        }
    }
    let (n1, n2) = (g1.num_arrows(), g2.num_arrows());
    for p in 0..n1 {
        for q in 0..n2 {
            let (a, b) = (&g1.arrows[p], &g2.arrows[q]);
            let id = pair(&a.id, &b.id);
            file.arrows.push(ArrowSpec {
                id: id.clone(),
                src: pair(&g1.units[a.src], &g2.units[b.src]),
                tgt: pair(&g1.units[a.tgt], &g2.units[b.tgt]),
            });
            file.inv.insert(id, pair(&g1.arrows[g1.inv(p)].id, &g2.arrows[g2.inv(q)].id));
        }
    }
    for p in 0..n1 {
        for p2 in 0..n1 {
            let Some(pp) = g1.compose(p, p2) else { continue };
            for q in 0..n2 {
                for q2 in 0..n2 {
                    let Some(qq) = g2.compose(q, q2) else { continue };
                    file.comp.push((
                        pair(&g1.arrows[p].id, &g2.arrows[q].id),
                        pair(&g1.arrows[p2].id, &g2.arrows[q2].id),
                        pair(&g1.arrows[pp].id, &g2.arrows[qq].id),
                    ));
                }
            }
        }
    }
    Groupoid::from_file(&file).expect("product of groupoids is a groupoid")
}
