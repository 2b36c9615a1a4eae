//! Algebraic maps `M(G; a, b)`.
//!
//! Darts are the elements of `G`. The rotation sends dart `g` to `a g` and
//! the reversal sends it to `b g`, so vertices, edges and faces are the right
//! cosets of `<a>`, `<b>` and `<ab>`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::families::{Chirality, FamilyGroup, MapParameters};
use crate::numtheory::factorize;
use crate::permgroup::{pair_extends, PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("a or b is not in the group")]
    NotInGroup,
    #[error("b is not an involution")]
    NotInvolution,
    #[error("a and b do not generate the group")]
    DoesNotGenerate,
    #[error("<a> is not core-free")]
    NotCoreFree,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone)]
pub struct AlgebraicMap {
    group: Arc<PermGroup>,
    a: Permutation,
    b: Permutation,
    params: Option<MapParameters>,
}

/// Checks the hypotheses and builds `M(G; a, b)`.
pub fn build_map(
    group: Arc<PermGroup>,
    a: Permutation,
    b: Permutation,
) -> Result<AlgebraicMap, MapError> {
    if !group.contains(&a) || !group.contains(&b) {
        return Err(MapError::NotInGroup);
    }
    if b.is_identity() || !b.then(&b).is_identity() {
        return Err(MapError::NotInvolution);
    }
    if !group.is_generated_by(&[a.clone(), b.clone()])? {
        return Err(MapError::DoesNotGenerate);
    }
    // a nontrivial core would contain <a^(t/q)> for some prime q | t
    let t = a.order();
    let gens = [a.clone(), b.clone()];
    for (q, _) in factorize(t) {
        let z = a.pow((t / q) as i64);
        let powers: Vec<Permutation> = (0..q as i64).map(|i| z.pow(i)).collect();
        if gens.iter().all(|g| powers.contains(&z.conj(g))) {
            return Err(MapError::NotCoreFree);
        }
    }
    Ok(AlgebraicMap {
        group,
        a,
        b,
        params: None,
    })
}

impl AlgebraicMap {
    pub fn from_family(fg: &FamilyGroup) -> Result<Self, MapError> {
        let mut map = build_map(Arc::clone(&fg.group), fg.a.clone(), fg.b.clone())?;
        map.params = Some(fg.params.clone());
        Ok(map)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn shared_group(&self) -> Arc<PermGroup> {
        Arc::clone(&self.group)
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn b(&self) -> &Permutation {
        &self.b
    }

    pub fn params(&self) -> Option<&MapParameters> {
        self.params.as_ref()
    }

    pub fn with_params(mut self, params: MapParameters) -> Self {
        self.params = Some(params);
        self
    }

    pub fn label(&self) -> String {
        self.params
            .as_ref()
            .map_or_else(|| "M(G;a,b)".to_string(), MapParameters::label)
    }

    pub fn dart_count(&self) -> usize {
        self.group.order()
    }

    /// `M(G; a^-1, b)`.
    pub fn mirror(&self) -> AlgebraicMap {
        AlgebraicMap {
            group: Arc::clone(&self.group),
            a: self.a.inverse(),
            b: self.b.clone(),
            params: None,
        }
    }

    pub fn is_reflexible(&self) -> bool {
        pair_extends(
            &[self.a.clone(), self.b.clone()],
            &[self.a.inverse(), self.b.clone()],
        )
    }

    /// Vertex of every dart: cosets `<a> g` numbered by least dart index.
    pub fn vertex_of_darts(&self) -> Vec<usize> {
        let elements = self.group.elements();
        let mut vertex = vec![usize::MAX; elements.len()];
        let mut next = 0;
        for (idx, g) in elements.iter().enumerate() {
            if vertex[idx] != usize::MAX {
                continue;
            }
            let mut d = g.clone();
            loop {
                let i = self.group.index_of(&d).expect("closed under products");
                if vertex[i] != usize::MAX {
                    break;
                }
                vertex[i] = next;
                d = self.a.then(&d);
            }
            next += 1;
        }
        vertex
    }

    /// Left multiplication by `x` on darts, as an index table.
    pub fn left_action(&self, x: &Permutation) -> Vec<usize> {
        self.group
            .elements()
            .iter()
            .map(|g| self.group.index_of(&x.then(g)).expect("closed under products"))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapInvariants {
    pub face_length: u64,
    pub valency: u64,
    pub vertices: u64,
    pub edges: u64,
    pub faces: u64,
    pub euler: i64,
    pub genus: u64,
    pub chirality: Chirality,
}

pub fn invariants(map: &AlgebraicMap) -> MapInvariants {
    let order = map.group.order() as u64;
    let s = map.a.then(&map.b).order();
    let t = map.a.order();
    let (v, e, f) = (order / t, order / 2, order / s);
    let euler = v as i64 - e as i64 + f as i64;
    debug_assert!(euler % 2 == 0 && euler <= 2);
    MapInvariants {
        face_length: s,
        valency: t,
        vertices: v,
        edges: e,
        faces: f,
        euler,
        genus: ((2 - euler) / 2) as u64,
        chirality: if map.is_reflexible() {
            Chirality::Reflexible
        } else {
            Chirality::Chiral
        },
    }
}

/// Whether some isomorphism of the groups carries `(a1, b1)` to `(a2, b2)`.
pub fn is_isomorphic(m1: &AlgebraicMap, m2: &AlgebraicMap) -> bool {
    m1.group.order() == m2.group.order()
        && pair_extends(
            &[m1.a.clone(), m1.b.clone()],
            &[m2.a.clone(), m2.b.clone()],
        )
}

/// For each vertex, the neighbours met by rotating a dart around it.
pub fn rotation_system(map: &AlgebraicMap) -> Vec<Vec<usize>> {
    let vertex = map.vertex_of_darts();
    let rot = map.left_action(&map.a);
    let rev = map.left_action(&map.b);
    let nv = vertex.iter().max().map_or(0, |&v| v + 1);
    let mut out = vec![Vec::new(); nv];
    let mut seen = vec![false; vertex.len()];
    for start in 0..vertex.len() {
        let v = vertex[start];
        if !out[v].is_empty() {
            continue;
        }
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            out[v].push(vertex[rev[d]]);
            d = rot[d];
        }
    }
    out
}

/// `v<id>: <neighbours>` per line.
pub fn rotation_system_text(map: &AlgebraicMap) -> String {
    let mut out = String::new();
    for (v, nbrs) in rotation_system(map).iter().enumerate() {
        let list: Vec<String> = nbrs.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "v{v}: {}", list.join(" "));
    }
    out
}

/// Invariants plus provenance, in a fixed key order.
#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub family: Option<String>,
    pub label: String,
    pub params: Option<MapParameters>,
    pub group_order: usize,
    #[serde(rename = "type")]
    pub map_type: [u64; 2],
    #[serde(rename = "V")]
    pub vertices: u64,
    #[serde(rename = "E")]
    pub edges: u64,
    #[serde(rename = "F")]
    pub faces: u64,
    pub genus: u64,
    pub chirality: Chirality,
}

impl MapReport {
    pub fn new(map: &AlgebraicMap) -> Self {
        Self::with_invariants(map, &invariants(map))
    }

    pub fn with_invariants(map: &AlgebraicMap, inv: &MapInvariants) -> Self {
        MapReport {
            family: map.params.as_ref().map(|p| p.family.to_string()),
            label: map.label(),
            params: map.params.clone(),
            group_order: map.group.order(),
            map_type: [inv.face_length, inv.valency],
            vertices: inv.vertices,
            edges: inv.edges,
            faces: inv.faces,
            genus: inv.genus,
            chirality: inv.chirality,
        }
    }
}
