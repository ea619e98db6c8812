//! Small helpers for maps of a finite carrier stored as `&[u8]` rows.

pub fn identity(n: usize) -> Vec<u8> {
    (0..n as u8).collect()
}

pub fn is_identity(row: &[u8]) -> bool {
    row.iter().enumerate().all(|(i, &v)| v as usize == i)
}

pub fn is_permutation(row: &[u8]) -> bool {
    first_collision(row).is_none()
}

/// First pair `(i, j)`, `i < j`, with `row[i] == row[j]`.
pub fn first_collision(row: &[u8]) -> Option<(usize, usize)> {
    let mut seen = [u8::MAX; 256];
    for (j, &v) in row.iter().enumerate() {
        let prev = seen[v as usize];
        if prev != u8::MAX {
            return Some((prev as usize, j));
        }
        seen[v as usize] = j as u8;
    }
    None
}

/// Inverse of a permutation. The caller guarantees `row` is a permutation.
pub fn inverse(row: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; row.len()];
    for (i, &v) in row.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

/// `(outer ∘ inner)(i) = outer[inner[i]]`.
pub fn compose(outer: &[u8], inner: &[u8]) -> Vec<u8> {
    inner.iter().map(|&i| outer[i as usize]).collect()
}

/// Advance to the next permutation in lexicographic order; false when `v` was the last one.
pub fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur = identity(n);
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// All maps `0..n -> 0..n` in lexicographic order.
pub fn all_functions(n: usize) -> Vec<Vec<u8>> {
    let total = n.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u8; n];
    for _ in 0..total {
        out.push(cur.clone());
        for pos in (0..n).rev() {
            cur[pos] += 1;
            if (cur[pos] as usize) < n {
                break;
            }
            cur[pos] = 0;
        }
    }
    out
}
