//! Deterministic enumeration of integer vectors by sup-norm shells.

/// All vectors in `{-r..=r}^len` with sup-norm exactly `r`, in ascending
/// lexicographic order. Radius 0 yields the single zero vector.
pub fn lattice_shell(len: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if len == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![-r; len];
    loop {
        if cur.iter().any(|c| c.abs() == r) {
            out.push(cur.clone());
        }
        // odometer increment, last component fastest
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -r;
                }
                break;
            }
        }
    }
}

/// Radius-major enumeration: radius 1 shell, then radius 2, up to `max_radius`.
pub fn lattice_search(len: usize, max_radius: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_radius).flat_map(move |r| lattice_shell(len, r))
}
