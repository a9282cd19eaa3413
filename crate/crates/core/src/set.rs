//! Bitmask helpers for subsets of `[n]`, element `e` living in bit `e - 1`.

#[inline]
pub fn bit(e: u32) -> u32 {
    1 << (e - 1)
}

#[inline]
pub fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn from_slice(elems: &[u32]) -> u32 {
    elems.iter().fold(0, |m, &e| m | bit(e))
}

/// Elements in increasing order.
pub fn elements(mut mask: u32) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let e = mask.trailing_zeros() + 1;
            mask &= mask - 1;
            Some(e)
        }
    })
}

#[inline]
pub fn min(mask: u32) -> u32 {
    debug_assert!(mask != 0);
    mask.trailing_zeros() + 1
}

#[inline]
pub fn max(mask: u32) -> u32 {
    debug_assert!(mask != 0);
    32 - mask.leading_zeros()
}

/// Nonempty submasks of `mask`, in increasing numeric order.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub = 0u32;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        sub = sub.wrapping_sub(mask) & mask;
        if sub == 0 {
            done = true;
            None
        } else {
            Some(sub)
        }
    })
}

/// Digits concatenated when every element is below 10, comma separated otherwise.
pub fn render(mask: u32) -> String {
    if mask == 0 || max(mask) <= 9 {
        elements(mask).map(|e| char::from_digit(e, 10).unwrap()).collect()
    } else {
        render_list(mask)
    }
}

pub fn render_list(mask: u32) -> String {
    elements(mask)
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u32> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).count(), 0);
    }

    #[test]
    fn extremes() {
        assert_eq!(min(0b10100), 3);
        assert_eq!(max(0b10100), 5);
        assert_eq!(render(from_slice(&[2, 4, 7])), "247");
        assert_eq!(render(from_slice(&[2, 11])), "2,11");
    }
}
