use std::collections::{BTreeSet, HashMap};

use super::{ConstructionError, GroupAction};
use crate::geometric::{scheme_from_geometric, validate_geometric, GeometricPoset};
use crate::poset::{Poset, RankedPoset};
use crate::scheme::MatroidScheme;

/// Default bound on `|D_n(G,T)|`.
pub const DEFAULT_DOWLING_CAP: usize = 5000;

/// A partial `G`-partition of `{0..n}` with a `T`-coloring of the leftover
/// points. Blocks are sorted by least member; each coloring is the class
/// representative giving the least member the identity color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DowlingElement {
    /// `(members, colors)` with members increasing.
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
    /// `zmap[i]` is the `T`-color of point `i`, or `None` if `i` is in a block.
    pub zmap: Vec<Option<usize>>,
}

impl DowlingElement {
    /// `n − ℓ(β)`.
    pub fn rank(&self) -> usize {
        self.zmap.len() - self.blocks.len()
    }

    pub fn id(&self, act: &GroupAction) -> String {
        let g = act.group();
        let mut s = String::new();
        for (members, colors) in &self.blocks {
            let parts: Vec<String> = members
                .iter()
                .zip(colors)
                .map(|(&i, &c)| format!("{}:{}", i + 1, g.name(c)))
                .collect();
            s.push_str(&format!("({})", parts.join(",")));
        }
        let z: Vec<String> = self
            .zmap
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| format!("{}={}", i + 1, act.points()[t])))
            .collect();
        if !z.is_empty() {
            s.push('|');
            s.push_str(&z.join(","));
        }
        s
    }

    fn normalized(mut blocks: Vec<(Vec<usize>, Vec<usize>)>, zmap: Vec<Option<usize>>, act: &GroupAction) -> Self {
        let g = act.group();
        for (members, colors) in blocks.iter_mut() {
            let mut pairs: Vec<(usize, usize)> = members.iter().copied().zip(colors.iter().copied()).collect();
            pairs.sort_unstable();
            let shift = g.inv(pairs[0].1);
            *members = pairs.iter().map(|p| p.0).collect();
            *colors = pairs.iter().map(|p| g.mul(p.1, shift)).collect();
        }
        blocks.sort();
        Self { blocks, zmap }
    }
}

/// All elements of `D_n(G,T)`, sorted by rank and then canonically.
pub fn dowling_elements(n: usize, act: &GroupAction) -> Vec<DowlingElement> {
    fn go(
        i: usize,
        n: usize,
        act: &GroupAction,
        blocks: &mut Vec<(Vec<usize>, Vec<usize>)>,
        zmap: &mut Vec<Option<usize>>,
        out: &mut Vec<DowlingElement>,
    ) {
        if i == n {
            out.push(DowlingElement {
                blocks: blocks.clone(),
                zmap: zmap.clone(),
            });
            return;
        }
        for t in 0..act.points().len() {
            zmap[i] = Some(t);
            go(i + 1, n, act, blocks, zmap, out);
        }
        zmap[i] = None;
        for b in 0..blocks.len() {
            for c in 0..act.group().order() {
                blocks[b].0.push(i);
                blocks[b].1.push(c);
                go(i + 1, n, act, blocks, zmap, out);
                blocks[b].0.pop();
                blocks[b].1.pop();
            }
        }
        blocks.push((vec![i], vec![act.group().identity()]));
        go(i + 1, n, act, blocks, zmap, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, act, &mut Vec::new(), &mut vec![None; n], &mut out);
    out.sort_by(|a, b| (a.rank(), a).cmp(&(b.rank(), b)));
    out
}

fn upper_covers(x: &DowlingElement, act: &GroupAction) -> BTreeSet<DowlingElement> {
    let g = act.group();
    let mut out = BTreeSet::new();
    let k = x.blocks.len();
    for p in 0..k {
        for q in p + 1..k {
            for h in 0..g.order() {
                let (a, b) = (&x.blocks[p], &x.blocks[q]);
                let mut members = a.0.clone();
                let mut colors = a.1.clone();
                members.extend(&b.0);
                colors.extend(b.1.iter().map(|&c| g.mul(c, h)));
                let mut blocks: Vec<_> = x
                    .blocks
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != p && i != q)
                    .map(|(_, b)| b.clone())
                    .collect();
                blocks.push((members, colors));
                out.insert(DowlingElement::normalized(blocks, x.zmap.clone(), act));
            }
        }
    }
    for p in 0..k {
        // f: G → T equivariant is g ↦ g·t0
        for t0 in 0..act.points().len() {
            let mut zmap = x.zmap.clone();
            for (&i, &c) in x.blocks[p].0.iter().zip(&x.blocks[p].1) {
                zmap[i] = Some(act.act(c, t0));
            }
            let blocks = x
                .blocks
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, b)| b.clone())
                .collect();
            out.insert(DowlingElement::normalized(blocks, zmap, act));
        }
    }
    out
}

pub fn dowling_poset(n: usize, act: &GroupAction) -> Result<(GeometricPoset, MatroidScheme), ConstructionError> {
    dowling_poset_with_cap(n, act, DEFAULT_DOWLING_CAP)
}

/// `D_n(G,T)` with its covering relations, certified geometric, and the
/// simple scheme it determines.
pub fn dowling_poset_with_cap(
    n: usize,
    act: &GroupAction,
    cap: usize,
) -> Result<(GeometricPoset, MatroidScheme), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Invalid("n must be positive".into()));
    }
    let elements = dowling_elements(n, act);
    if elements.len() > cap {
        return Err(ConstructionError::SizeCap {
            size: elements.len(),
            cap,
        });
    }
    let index: HashMap<&DowlingElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut covers = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for y in upper_covers(x, act) {
            covers.push((i, index[&y]));
        }
    }
    let ids = elements.iter().map(|e| e.id(act)).collect();
    let poset = Poset::from_indices(ids, &covers).expect("Dowling covers form a Hasse diagram");
    let rp = RankedPoset::new(poset).expect("Dowling posets are bounded below and ranked");
    for (i, e) in elements.iter().enumerate() {
        assert_eq!(rp.rank(i), e.rank(), "ρ(β, z) = n − ℓ(β)");
    }
    let gp = validate_geometric(rp)?;
    let scheme = scheme_from_geometric(&gp);
    Ok((gp, scheme))
}
