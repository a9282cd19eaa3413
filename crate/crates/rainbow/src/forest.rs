use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A plane rainbow forest. Node `k` of a labeled forest carries label `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RainbowForest {
    ell: usize,
    parent: Vec<Option<usize>>,
    color: Vec<u8>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    labeled: bool,
}

/// A recursive plane tree with node colors (`0` for the root).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub color: u8,
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Shape::size).sum::<usize>()
    }
}

impl RainbowForest {
    /// A labeled forest from a parent map and node colors (`color[k] = 0`
    /// exactly for roots). Children are put in canonical `(color, label)` order.
    pub fn labeled(ell: usize, parent: Vec<Option<usize>>, color: Vec<u8>) -> Result<Self> {
        let n = parent.len();
        if color.len() != n {
            return Err(Error::Invalid("parent and color lengths differ".into()));
        }
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for k in 0..n {
            match parent[k] {
                Some(p) if p < n => children[p].push(k),
                Some(p) => return Err(Error::Invalid(format!("parent {p} out of range"))),
                None => roots.push(k),
            }
        }
        for ch in &mut children {
            ch.sort_by_key(|&k| (color[k], k));
        }
        let f = RainbowForest { ell, parent, color, children, roots, labeled: true };
        f.validate()?;
        Ok(f)
    }

    /// An unlabeled plane forest from shapes, nodes numbered in preorder.
    pub fn from_shapes(ell: usize, shapes: &[Shape]) -> Result<Self> {
        let mut f = RainbowForest {
            ell,
            parent: vec![],
            color: vec![],
            children: vec![],
            roots: vec![],
            labeled: false,
        };
        fn push(f: &mut RainbowForest, s: &Shape, parent: Option<usize>) -> usize {
            let k = f.parent.len();
            f.parent.push(parent);
            f.color.push(s.color);
            f.children.push(vec![]);
            for c in &s.children {
                let ck = push(f, c, Some(k));
                f.children[k].push(ck);
            }
            k
        }
        for s in shapes {
            if s.color != 0 {
                return Err(Error::Invalid("roots must be uncolored".into()));
            }
            let r = push(&mut f, s, None);
            f.roots.push(r);
        }
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for k in 0..n {
            let c = self.color[k] as usize;
            match self.parent[k] {
                None if c != 0 => return Err(Error::Invalid(format!("root {} is colored", k + 1))),
                Some(_) if c == 0 || c > self.ell => {
                    return Err(Error::Invalid(format!("node {} has color {c}", k + 1)))
                }
                Some(p) if self.color[p] as usize == c => {
                    return Err(Error::Invalid(format!("monochromatic edge at node {}", k + 1)))
                }
                _ => {}
            }
            let ch = &self.children[k];
            for w in ch.windows(2) {
                if self.color[w[0]] > self.color[w[1]] {
                    return Err(Error::Invalid("sibling colors decrease".into()));
                }
                if self.labeled && self.color[w[0]] == self.color[w[1]] && w[0] > w[1] {
                    return Err(Error::Invalid("same-colored sibling labels decrease".into()));
                }
            }
        }
        // acyclic parent map
        for k in 0..n {
            let (mut v, mut steps) = (k, 0);
            while let Some(p) = self.parent[v] {
                v = p;
                steps += 1;
                if steps > n {
                    return Err(Error::Invalid("parent map has a cycle".into()));
                }
            }
            if self.labeled && v > k {
                return Err(Error::Invalid(format!("root {} is not minimal in its tree", v + 1)));
            }
        }
        Ok(())
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of nodes `‖F‖`.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of trees `|F|`.
    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    pub fn is_labeled(&self) -> bool {
        self.labeled
    }

    pub fn parent(&self, k: usize) -> Option<usize> {
        self.parent[k]
    }

    pub fn color(&self, k: usize) -> u8 {
        self.color[k]
    }

    pub fn children(&self, k: usize) -> &[usize] {
        &self.children[k]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn root_of(&self, mut k: usize) -> usize {
        while let Some(p) = self.parent[k] {
            k = p;
        }
        k
    }

    pub fn tree_sizes(&self) -> Vec<usize> {
        let mut size = vec![0; self.len()];
        for k in 0..self.len() {
            size[self.root_of(k)] += 1;
        }
        self.roots.iter().map(|&r| size[r]).collect()
    }

    pub fn shapes(&self) -> Vec<Shape> {
        fn shape(f: &RainbowForest, k: usize) -> Shape {
            Shape {
                color: f.color[k],
                children: f.children[k].iter().map(|&c| shape(f, c)).collect(),
            }
        }
        self.roots.iter().map(|&r| shape(self, r)).collect()
    }

    /// `ω(F)`: product of factorials of same-colored child counts.
    pub fn omega(&self) -> BigUint {
        let mut w = BigUint::one();
        for ch in &self.children {
            let mut run = 0u32;
            let mut last = None;
            for &c in ch {
                if Some(self.color[c]) == last {
                    run += 1;
                } else {
                    run = 1;
                    last = Some(self.color[c]);
                }
                w *= run;
            }
        }
        w
    }

    /// `λ(F) = n! / (ω(F) Π_T ‖T‖)`, the number of labelings.
    pub fn labeling_count(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 2..=self.len() as u32 {
            num *= k;
        }
        let mut den = self.omega();
        for s in self.tree_sizes() {
            den *= s as u32;
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r == BigUint::from(0u32));
        q
    }
}

/// `F_{ℓ,m} = C(ℓm, m) / ((ℓ−1)m + 1)`.
pub fn fuss_catalan(ell: usize, m: usize) -> BigUint {
    let mut b = BigUint::one();
    for k in 0..m {
        b = b * (ell * m - k) / (k + 1);
    }
    b / ((ell - 1) * m + 1)
}

/// All unlabeled `(ℓ,m)`-rainbow trees, generated directly from the
/// definition: each node lists, per color other than its own, an ordered
/// sequence of subtrees of that color.
pub fn rainbow_trees(ell: usize, m: usize) -> Vec<Shape> {
    if m == 0 {
        return vec![];
    }
    gen(ell, m, 0)
}

fn gen(ell: usize, m: usize, color: u8) -> Vec<Shape> {
    let colors: Vec<u8> = (1..=ell as u8).filter(|&c| c != color).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    children(ell, &colors, 0, m - 1, &mut cur, &mut out, color);
    out
}

/// Ordered child lists using colors `colors[ci..]`, `left` nodes in total.
fn children(
    ell: usize,
    colors: &[u8],
    ci: usize,
    left: usize,
    cur: &mut Vec<Shape>,
    out: &mut Vec<Shape>,
    color: u8,
) {
    if left == 0 {
        out.push(Shape { color, children: cur.clone() });
        return;
    }
    if ci == colors.len() {
        return;
    }
    // either move on to the next color, or append one more child of this color
    children(ell, colors, ci + 1, left, cur, out, color);
    for size in 1..=left {
        for sub in gen(ell, size, colors[ci]) {
            cur.push(sub);
            children(ell, colors, ci, left - size, cur, out, color);
            cur.pop();
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    color: Option<u8>,
    children: Vec<NodeJson>,
}

impl Serialize for RainbowForest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        fn node(f: &RainbowForest, k: usize) -> NodeJson {
            NodeJson {
                label: f.labeled.then_some(k as u32 + 1),
                color: (f.color[k] != 0).then_some(f.color[k]),
                children: f.children[k].iter().map(|&c| node(f, c)).collect(),
            }
        }
        #[derive(Serialize)]
        struct Out {
            ell: usize,
            trees: Vec<NodeJson>,
        }
        Out { ell: self.ell, trees: self.roots.iter().map(|&r| node(self, r)).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RainbowForest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct In {
            ell: usize,
            trees: Vec<NodeJson>,
        }
        let input = In::deserialize(d)?;
        let labeled = input.trees.first().is_some_and(|t| t.label.is_some());
        if !labeled {
            fn shape(j: &NodeJson) -> Shape {
                Shape { color: j.color.unwrap_or(0), children: j.children.iter().map(shape).collect() }
            }
            let shapes: Vec<Shape> = input.trees.iter().map(shape).collect();
            return RainbowForest::from_shapes(input.ell, &shapes).map_err(D::Error::custom);
        }
        let mut entries = Vec::new();
        fn walk(j: &NodeJson, parent: Option<u32>, out: &mut Vec<(u32, Option<u32>, u8)>) -> bool {
            let Some(l) = j.label else { return false };
            out.push((l, parent, j.color.unwrap_or(0)));
            j.children.iter().all(|c| walk(c, Some(l), out))
        }
        for t in &input.trees {
            if !walk(t, None, &mut entries) {
                return Err(D::Error::custom("mixed labeled and unlabeled nodes"));
            }
        }
        let n = entries.len();
        let mut parent = vec![None; n];
        let mut color = vec![0; n];
        let mut seen = vec![false; n];
        for (l, p, c) in entries {
            let k = l as usize;
            if k == 0 || k > n || seen[k - 1] {
                return Err(D::Error::custom(format!("bad label {l}")));
            }
            seen[k - 1] = true;
            parent[k - 1] = p.map(|p| p as usize - 1);
            color[k - 1] = c;
        }
        RainbowForest::labeled(input.ell, parent, color).map_err(D::Error::custom)
    }
}
