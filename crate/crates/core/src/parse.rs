use crate::{Error, Result};

/// Candidate block readings of a `|`-separated string, most likely first.
///
/// With a comma anywhere, elements are comma separated inside blocks. Otherwise
/// each digit is an element, and as a fallback each block is a single integer
/// (so `"10|2|1|3|4|5|6|7|8|9"` still parses).
pub(crate) fn block_readings(s: &str) -> Result<Vec<Vec<Vec<u32>>>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![vec![]]);
    }
    let raw: Vec<&str> = s.split('|').map(str::trim).collect();
    if raw.iter().any(|b| b.is_empty()) {
        return Err(Error::parse(s, "empty block"));
    }
    if s.contains(',') {
        let blocks = raw
            .iter()
            .map(|b| b.split(',').map(|t| int(s, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return Ok(vec![blocks]);
    }
    let mut out = Vec::new();
    if raw.iter().all(|b| b.chars().all(|c| c.is_ascii_digit())) {
        out.push(
            raw.iter()
                .map(|b| b.chars().map(|c| c.to_digit(10).unwrap()).collect())
                .collect(),
        );
        if let Ok(tokens) = raw.iter().map(|b| int(s, b).map(|e| vec![e])).collect() {
            out.push(tokens);
        }
        return Ok(out);
    }
    Err(Error::parse(s, "unexpected character"))
}

fn int(s: &str, t: &str) -> Result<u32> {
    t.trim()
        .parse::<u32>()
        .map_err(|_| Error::parse(s, format!("bad element {t:?}")))
}

/// Validates that `blocks` are nonempty, disjoint and cover `[n]`; returns masks.
pub(crate) fn validate_blocks(input: &str, blocks: &[Vec<u32>]) -> Result<(usize, Vec<u32>)> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    if n > 32 {
        return Err(Error::parse(input, "more than 32 elements"));
    }
    let mut seen = 0u32;
    let mut masks = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_empty() {
            return Err(Error::parse(input, "empty block"));
        }
        let mut m = 0u32;
        for &e in b {
            if e == 0 || e as usize > n {
                return Err(Error::parse(input, format!("element {e} outside [{n}]")));
            }
            let bit = 1u32 << (e - 1);
            if seen & bit != 0 {
                return Err(Error::parse(input, format!("element {e} repeated")));
            }
            seen |= bit;
            m |= bit;
        }
        masks.push(m);
    }
    Ok((n, masks))
}
