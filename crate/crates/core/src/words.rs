//! Enumeration of words over an indexed alphabet.

/// All words of the given length over letters `0..k`, in lexicographic order.
pub fn words_of_length(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * k);
        for w in &out {
            for a in 0..k {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// All nonempty words of length at most `max_len`, shortest first.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    (1..=max_len).flat_map(|l| words_of_length(k, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(words_of_length(2, 3).len(), 8);
        assert_eq!(words_up_to(2, 6).len(), 2 + 4 + 8 + 16 + 32 + 64);
        assert_eq!(words_up_to(3, 2), vec![
            vec![0], vec![1], vec![2],
            vec![0, 0], vec![0, 1], vec![0, 2],
            vec![1, 0], vec![1, 1], vec![1, 2],
            vec![2, 0], vec![2, 1], vec![2, 2],
        ]);
    }
}
