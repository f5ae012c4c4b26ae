//! Round-robin schedule of the pairwise interactions.

/// Rounds of disjoint pairs covering every unordered pair of `0..b` once.
/// Even `b` gives `b − 1` rounds, odd `b` gives `b` (one particle sits out each round).
pub fn pair_schedule(b: usize) -> Vec<Vec<(usize, usize)>> {
    if b < 2 {
        return Vec::new();
    }
    let n = b + b % 2;
    let bye = (b % 2 == 1).then_some(n - 1);
    // circle method: 0 stays fixed, the rest rotate
    let mut ring: Vec<usize> = (1..n).collect();
    let mut rounds = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let mut seats = vec![0];
        seats.extend(&ring);
        let round: Vec<(usize, usize)> = (0..n / 2)
            .map(|i| (seats[i], seats[n - 1 - i]))
            .filter(|&(a, c)| Some(a) != bye && Some(c) != bye)
            .map(|(a, c)| (a.min(c), a.max(c)))
            .collect();
        rounds.push(round);
        ring.rotate_right(1);
    }
    rounds
}
