use crate::Shape;

/// A plane `ℓ`-ary tree: every node has `ℓ` optional child slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AryTree {
    pub slots: Vec<Option<Box<AryTree>>>,
}

impl AryTree {
    pub fn leaf(ell: usize) -> Self {
        AryTree { slots: vec![None; ell] }
    }

    pub fn size(&self) -> usize {
        1 + self.slots.iter().flatten().map(|t| t.size()).sum::<usize>()
    }
}

/// A node colored `c` goes into slot `c` of its previous `c`-colored sibling,
/// or into slot `c` of its parent when it is the first such child.
pub fn rainbow_to_ary(tree: &Shape, ell: usize) -> AryTree {
    let mut node = AryTree::leaf(ell);
    for c in 1..=ell as u8 {
        let mut next: Option<Box<AryTree>> = None;
        for s in tree.children.iter().rev().filter(|s| s.color == c) {
            let mut t = rainbow_to_ary(s, ell);
            t.slots[c as usize - 1] = next;
            next = Some(Box::new(t));
        }
        node.slots[c as usize - 1] = next;
    }
    node
}

/// Inverse of [`rainbow_to_ary`]: slot `c` of a node colored `c` holds its next
/// sibling, any other slot `c` holds its first `c`-colored child.
pub fn ary_to_rainbow(tree: &AryTree) -> Shape {
    decode(tree, 0)
}

fn decode(tree: &AryTree, color: u8) -> Shape {
    let mut children = Vec::new();
    for c in 1..=tree.slots.len() as u8 {
        if c == color {
            continue;
        }
        let mut cur = tree.slots[c as usize - 1].as_deref();
        while let Some(t) = cur {
            children.push(decode(t, c));
            cur = t.slots[c as usize - 1].as_deref();
        }
    }
    Shape { color, children }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node() {
        let s = Shape { color: 0, children: vec![] };
        assert_eq!(rainbow_to_ary(&s, 2), AryTree::leaf(2));
        assert_eq!(ary_to_rainbow(&AryTree::leaf(2)), s);
    }

    #[test]
    fn path_of_three() {
        // root -(1)- a -(2)- b : a sits in slot 1 of the root, b in slot 2 of a
        let s = Shape {
            color: 0,
            children: vec![Shape { color: 1, children: vec![Shape { color: 2, children: vec![] }] }],
        };
        let t = rainbow_to_ary(&s, 2);
        let a = t.slots[0].as_ref().unwrap();
        assert!(t.slots[1].is_none());
        assert!(a.slots[0].is_none());
        assert_eq!(**a.slots[1].as_ref().unwrap(), AryTree::leaf(2));
        assert_eq!(ary_to_rainbow(&t), s);
    }
}
