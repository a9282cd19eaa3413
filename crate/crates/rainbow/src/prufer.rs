use crate::{Error, RainbowForest, Result};

/// Letters `(parent label, leaf color)`.
pub type PruferWord = Vec<(u32, u8)>;

/// Repeatedly prunes the smallest non-root leaf, recording its parent and color.
pub fn prufer_encode(tree: &RainbowForest) -> Result<PruferWord> {
    if !tree.is_labeled() || tree.tree_count() != 1 {
        return Err(Error::Invalid("Prüfer codes need a single labeled tree".into()));
    }
    let n = tree.len();
    let mut remaining: Vec<usize> = (0..n).map(|k| tree.children(k).len()).collect();
    let mut removed = vec![false; n];
    let mut word = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let leaf = (1..n)
            .find(|&k| !removed[k] && remaining[k] == 0)
            .expect("a tree always has a non-root leaf");
        let p = tree.parent(leaf).unwrap();
        word.push((p as u32 + 1, tree.color(leaf)));
        removed[leaf] = true;
        remaining[p] -= 1;
    }
    Ok(word)
}

/// Rebuilds the tree; rejects words outside the image (wrong length, last
/// parent not `1`, or a leaf sharing its non-root parent's color).
pub fn prufer_decode(ell: usize, n: usize, word: &[(u32, u8)]) -> Result<RainbowForest> {
    if n == 0 || word.len() != n - 1 {
        return Err(Error::InvalidWord(format!("length {} for n = {n}", word.len())));
    }
    if let Some(&(p, _)) = word.last() {
        if p != 1 {
            return Err(Error::InvalidWord("last letter must point at the root 1".into()));
        }
    }
    if let Some(&(p, c)) = word.iter().find(|&&(p, c)| p == 0 || p as usize > n || c == 0 || c as usize > ell) {
        return Err(Error::InvalidWord(format!("letter ({p},{c}) out of range")));
    }
    let mut pending = vec![0usize; n];
    for &(p, _) in word {
        pending[p as usize - 1] += 1;
    }
    let mut removed = vec![false; n];
    let mut parent = vec![None; n];
    let mut color = vec![0u8; n];
    for &(p, c) in word {
        let leaf = (1..n)
            .find(|&k| !removed[k] && pending[k] == 0)
            .ok_or_else(|| Error::InvalidWord("no leaf available".into()))?;
        parent[leaf] = Some(p as usize - 1);
        color[leaf] = c;
        removed[leaf] = true;
        pending[p as usize - 1] -= 1;
    }
    for k in 1..n {
        let p = parent[k].unwrap();
        if p != 0 && color[p] == color[k] {
            return Err(Error::InvalidWord(format!(
                "node {} and its parent {} share color {}",
                k + 1,
                p + 1,
                color[k]
            )));
        }
    }
    RainbowForest::labeled(ell, parent, color).map_err(|e| Error::InvalidWord(e.to_string()))
}

/// Number of words over `[n] × [ℓ]` of length `n − 1` that decode to a tree.
pub fn prufer_image_count(ell: usize, n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let letters: Vec<(u32, u8)> = (1..=n as u32)
        .flat_map(|p| (1..=ell as u8).map(move |c| (p, c)))
        .collect();
    let mut word = vec![(0u32, 0u8); n - 1];
    let mut count = 0;
    let total = letters.len().pow(n as u32 - 1);
    for mut code in 0..total {
        for slot in word.iter_mut() {
            *slot = letters[code % letters.len()];
            code /= letters.len();
        }
        if prufer_decode(ell, n, &word).is_ok() {
            count += 1;
        }
    }
    count
}

/// Labeled rainbow trees on `[n]` counted straight from the definition: every
/// parent map rooted at `1`, every coloring of nodes `2..=n` with no edge
/// joining two nodes of equal color.
pub fn labeled_rainbow_tree_count(ell: usize, n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let mut count = 0;
    let mut parent = vec![0usize; n];
    let total = n.pow(n as u32 - 1);
    'maps: for mut code in 0..total {
        for p in parent.iter_mut().skip(1) {
            *p = code % n;
            code /= n;
        }
        for k in 1..n {
            let (mut v, mut steps) = (k, 0);
            while v != 0 {
                v = parent[v];
                steps += 1;
                if steps > n {
                    continue 'maps;
                }
            }
        }
        let mut color = vec![0usize; n];
        let colorings = ell.pow(n as u32 - 1);
        'colors: for mut code in 0..colorings {
            for c in color.iter_mut().skip(1) {
                *c = code % ell + 1;
                code /= ell;
            }
            for k in 1..n {
                if color[parent[k]] == color[k] {
                    continue 'colors;
                }
            }
            count += 1;
        }
    }
    count
}
