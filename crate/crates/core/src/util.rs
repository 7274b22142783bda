//! Small internal helpers shared across modules.

/// Advances `picks` to the next size-|picks| combination of `0..n` in
/// lexicographic order. Returns false after the last combination.
pub(crate) fn next_combination(picks: &mut [usize], n: usize) -> bool {
    let k = picks.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if picks[i] < n - k + i {
            picks[i] += 1;
            for j in i + 1..k {
                picks[j] = picks[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
