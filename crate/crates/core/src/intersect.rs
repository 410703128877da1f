//! Intersection counting for sorted, duplicate-free slices.

/// Above this length ratio the shorter list is galloped through the longer
/// one instead of merged with it.
pub const GALLOP_RATIO: usize = 32;

/// `|a ∩ b|` for ascending, duplicate-free slices.
#[inline]
pub fn intersection_count<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.is_empty() {
        return 0;
    }
    if large.len() / small.len() > GALLOP_RATIO {
        gallop_count(small, large)
    } else {
        merge_count(small, large)
    }
}

pub fn merge_count<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Exponential search of each element of `small` in `large`, resuming from
/// the previous hit.
pub fn gallop_count<T: Ord>(small: &[T], mut large: &[T]) -> usize {
    let mut n = 0;
    for x in small {
        large = gallop_ge(large, x);
        match large.first() {
            None => break,
            Some(y) if y == x => {
                n += 1;
                large = &large[1..];
            }
            Some(_) => {}
        }
    }
    n
}

/// Suffix of `slice` starting at the first element `>= value`.
#[inline]
fn gallop_ge<'a, T: Ord>(slice: &'a [T], value: &T) -> &'a [T] {
    if slice.first().is_none_or(|first| first >= value) {
        return slice;
    }
    // invariant: slice[lo] < value
    let mut lo = 0;
    let mut step = 1;
    while lo + step < slice.len() && slice[lo + step] < *value {
        lo += step;
        step <<= 1;
    }
    let hi = (lo + step).min(slice.len());
    let off = slice[lo + 1..hi].partition_point(|y| y < value);
    &slice[lo + 1 + off..]
}
