//! Permutations of strand positions and their reduced words.
//!
//! Words are read bottom-up: `word[0]` is the lowest crossing. Letter `r`
//! crosses the strands at 0-based positions `r` and `r + 1`. A permutation is
//! stored as `perm[p]` = top position of the strand that starts at `p`.

/// Which strand (by starting position) sits at each position after applying `word`.
pub fn strands_after(word: &[u8], m: usize) -> Vec<u8> {
    let mut at: Vec<u8> = (0..m as u8).collect();
    for &r in word {
        at.swap(r as usize, r as usize + 1);
    }
    at
}

pub fn perm_of_word(word: &[u8], m: usize) -> Vec<u8> {
    let at = strands_after(word, m);
    let mut perm = vec![0u8; m];
    for (pos, &s) in at.iter().enumerate() {
        perm[s as usize] = pos as u8;
    }
    perm
}

pub fn is_reduced(word: &[u8], m: usize) -> bool {
    let mut at: Vec<u8> = (0..m as u8).collect();
    for &r in word {
        let r = r as usize;
        if r + 1 >= m || at[r] > at[r + 1] {
            return false;
        }
        at.swap(r, r + 1);
    }
    true
}

pub fn length(perm: &[u8]) -> usize {
    let m = perm.len();
    (0..m).map(|a| (a + 1..m).filter(|&b| perm[a] > perm[b]).count()).sum()
}

/// Lexicographically smallest reduced word: repeatedly peel the smallest bottom descent.
pub fn canonical_word(perm: &[u8]) -> Vec<u8> {
    let mut p = perm.to_vec();
    let mut word = Vec::with_capacity(length(perm));
    while let Some(s) = (0..p.len().saturating_sub(1)).find(|&s| p[s] > p[s + 1]) {
        word.push(s as u8);
        p.swap(s, s + 1);
    }
    word
}

pub fn is_canonical(word: &[u8], m: usize) -> bool {
    canonical_word(&perm_of_word(word, m)) == word
}

/// Sequence on top of the crossings: `out[perm[p]] = seq[p]`.
pub fn act<T: Copy>(word: &[u8], seq: &[T]) -> Vec<T> {
    let mut out = seq.to_vec();
    for &r in word {
        out.swap(r as usize, r as usize + 1);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// `[a, b] -> [b, a]` with `|a - b| >= 2`.
    Commute,
    /// `[a, b, a] -> [b, a, b]` with `|a - b| = 1`.
    Braid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordMove {
    pub at: usize,
    pub kind: MoveKind,
}

pub fn apply_move(word: &mut [u8], mv: WordMove) {
    let t = mv.at;
    match mv.kind {
        MoveKind::Commute => word.swap(t, t + 1),
        MoveKind::Braid => {
            let (a, b) = (word[t], word[t + 1]);
            word[t] = b;
            word[t + 1] = a;
            word[t + 2] = b;
        }
    }
}

/// Rewrites the reduced suffix `word[start..]` so that it begins with `s`,
/// which must be a bottom descent of that suffix.
fn to_front(word: &mut Vec<u8>, start: usize, s: u8, moves: &mut Vec<WordMove>) {
    let t = word[start];
    if t == s {
        return;
    }
    to_front(word, start + 1, s, moves);
    let mv = if t.abs_diff(s) >= 2 {
        WordMove { at: start, kind: MoveKind::Commute }
    } else {
        to_front(word, start + 2, t, moves);
        WordMove { at: start, kind: MoveKind::Braid }
    };
    apply_move(word, mv);
    moves.push(mv);
}

/// Braid and commutation moves taking reduced word `from` to reduced word `to`
/// of the same permutation.
pub fn move_path(from: &[u8], to: &[u8]) -> Vec<WordMove> {
    debug_assert_eq!(from.len(), to.len());
    let mut w = from.to_vec();
    let mut moves = Vec::new();
    for (k, &s) in to.iter().enumerate() {
        to_front(&mut w, k, s, &mut moves);
    }
    debug_assert_eq!(w, to);
    moves
}

/// Bottom-to-top permutation sending `bottom` to `top` in which equal labels never cross.
pub fn minimal_perm<T: PartialEq + Copy>(bottom: &[T], top: &[T]) -> Option<Vec<u8>> {
    if bottom.len() != top.len() {
        return None;
    }
    let mut used = vec![false; top.len()];
    let mut perm = Vec::with_capacity(bottom.len());
    for &c in bottom {
        let q = (0..top.len()).find(|&q| !used[q] && top[q] == c)?;
        used[q] = true;
        perm.push(q as u8);
    }
    Some(perm)
}

/// All permutations sending `bottom` to `top`, in lexicographic order.
pub fn transition_perms<T: PartialEq + Copy>(bottom: &[T], top: &[T]) -> Vec<Vec<u8>> {
    fn go<T: PartialEq + Copy>(
        k: usize,
        bottom: &[T],
        top: &[T],
        used: &mut Vec<bool>,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if k == bottom.len() {
            out.push(cur.clone());
            return;
        }
        for q in 0..top.len() {
            if !used[q] && top[q] == bottom[k] {
                used[q] = true;
                cur.push(q as u8);
                go(k + 1, bottom, top, used, cur, out);
                cur.pop();
                used[q] = false;
            }
        }
    }
    let mut out = Vec::new();
    if bottom.len() == top.len() {
        go(0, bottom, top, &mut vec![false; top.len()], &mut Vec::new(), &mut out);
    }
    out
}
