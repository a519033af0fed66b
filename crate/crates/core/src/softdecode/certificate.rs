/// Per-position choice: a symbol contributes `score` to the decoding score
/// and `cost` to the target's budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Choice {
    pub score: u32,
    pub cost: f64,
}

/// Whether some word (one choice per position) has total score <= `max_score`
/// and total cost <= `budget`. Exact dynamic program over total scores.
pub fn exists_low_score_word(options: &[Vec<Choice>], max_score: u64, budget: f64) -> bool {
    let width = max_score as usize + 1;
    let mut best = vec![f64::INFINITY; width];
    best[0] = 0.0;
    let mut next = vec![f64::INFINITY; width];
    for choices in options {
        next.fill(f64::INFINITY);
        for (s, &c) in best.iter().enumerate() {
            if c == f64::INFINITY {
                continue;
            }
            for ch in choices {
                let t = s + ch.score as usize;
                if t < width {
                    let v = c + ch.cost;
                    if v < next[t] {
                        next[t] = v;
                    }
                }
            }
        }
        std::mem::swap(&mut best, &mut next);
    }
    best.iter().any(|&c| c <= budget)
}

/// Minimum total score over words with total cost <= `budget`, or `None`
/// when no word meets the budget. Scores above `cap` are reported as `cap + 1`.
pub fn min_score_within_budget(options: &[Vec<Choice>], cap: u64, budget: f64) -> Option<u64> {
    let width = cap as usize + 2;
    let mut best = vec![f64::INFINITY; width];
    best[0] = 0.0;
    let mut next = vec![f64::INFINITY; width];
    for choices in options {
        next.fill(f64::INFINITY);
        for (s, &c) in best.iter().enumerate() {
            if c == f64::INFINITY {
                continue;
            }
            for ch in choices {
                let t = (s + ch.score as usize).min(width - 1);
                let v = c + ch.cost;
                if v < next[t] {
                    next[t] = v;
                }
            }
        }
        std::mem::swap(&mut best, &mut next);
    }
    best.iter().position(|&c| c <= budget).map(|s| s as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_min_score(options: &[Vec<Choice>], budget: f64) -> Option<u64> {
        let mut best: Option<u64> = None;
        let mut idx = vec![0usize; options.len()];
        loop {
            let score: u64 = idx.iter().zip(options).map(|(&i, o)| o[i].score as u64).sum();
            let cost: f64 = idx.iter().zip(options).map(|(&i, o)| o[i].cost).sum();
            if cost <= budget {
                best = Some(best.map_or(score, |b| b.min(score)));
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return best;
                }
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn dp_matches_brute_force(
            raw in prop::collection::vec(prop::collection::vec((0u32..6, 0u32..8), 1..4), 1..6),
            budget in 0u32..20,
        ) {
            let options: Vec<Vec<Choice>> = raw
                .into_iter()
                .map(|v| v.into_iter().map(|(s, c)| Choice { score: s, cost: c as f64 * 0.5 }).collect())
                .collect();
            let budget = budget as f64 * 0.5;
            let expect = brute_min_score(&options, budget);
            let cap = 40;
            prop_assert_eq!(min_score_within_budget(&options, cap, budget), expect);
            for max_score in 0..12u64 {
                prop_assert_eq!(exists_low_score_word(&options, max_score, budget), expect.is_some_and(|s| s <= max_score));
            }
        }
    }
}
