use super::reliability::ReliabilityVector;

/// Integer multiplicities m_{i,c} = floor(λ Π_{i,c}).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityMatrix {
    p: u32,
    n: usize,
    m: Vec<u32>,
    lambda: f64,
    cost: u64,
}

impl MultiplicityMatrix {
    pub fn assign(pi: &ReliabilityVector, lambda: f64) -> MultiplicityMatrix {
        let m: Vec<u32> = pi.entries().iter().map(|&x| (lambda * x).floor().max(0.0) as u32).collect();
        let cost = m.iter().map(|&v| constraint_count(v)).sum();
        MultiplicityMatrix { p: pi.p(), n: pi.n(), m, lambda, cost }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Number of interpolation constraints, sum of m(m+1)/2.
    pub fn cost(&self) -> u64 {
        self.cost
    }

    #[inline]
    pub fn get(&self, i: usize, c: u32) -> u32 {
        self.m[i * self.p as usize + c as usize]
    }

    pub fn entries(&self) -> &[u32] {
        &self.m
    }

    /// sum_i m_{i, x_i}; `None` symbols lie outside F_p and score zero.
    pub fn score(&self, word: &[Option<u32>]) -> u64 {
        word.iter().enumerate().filter_map(|(i, c)| c.map(|c| self.get(i, c) as u64)).sum()
    }
}

#[inline]
pub fn constraint_count(m: u32) -> u64 {
    m as u64 * (m as u64 + 1) / 2
}

/// Walks λ through the breakpoints j / Π_{i,c} in increasing order,
/// yielding each distinct multiplicity matrix once.
pub struct BreakpointWalk<'a> {
    pi: &'a ReliabilityVector,
    current: MultiplicityMatrix,
}

impl<'a> BreakpointWalk<'a> {
    pub fn new(pi: &'a ReliabilityVector) -> BreakpointWalk<'a> {
        BreakpointWalk { pi, current: MultiplicityMatrix::assign(pi, 0.0) }
    }
}

impl Iterator for BreakpointWalk<'_> {
    type Item = MultiplicityMatrix;

    fn next(&mut self) -> Option<MultiplicityMatrix> {
        let mut lambda = self
            .pi
            .entries()
            .iter()
            .zip(&self.current.m)
            .filter(|(&x, _)| x > 0.0)
            .map(|(&x, &m)| (m as f64 + 1.0) / x)
            .min_by(f64::total_cmp)?;
        // the quotient may round just below the breakpoint
        loop {
            let next = MultiplicityMatrix::assign(self.pi, lambda);
            if next.cost > self.current.cost {
                self.current = next;
                return Some(self.current.clone());
            }
            lambda += lambda * f64::EPSILON;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_blocks() {
        let pi = ReliabilityVector::indicator(2, &[0, 1, 1, 0]);
        let m = MultiplicityMatrix::assign(&pi, 3.0);
        assert_eq!(m.cost(), 6 * 4);
        assert_eq!(m.get(1, 1), 3);
        assert_eq!(m.get(1, 0), 0);
        assert_eq!(MultiplicityMatrix::assign(&pi, 0.9).cost(), 0);
    }

    #[test]
    fn fractional_block() {
        let pi = ReliabilityVector::new(2, vec![0.75, 0.25]).unwrap();
        let m = MultiplicityMatrix::assign(&pi, 4.0);
        assert_eq!(m.entries(), &[3, 1]);
        assert_eq!(m.cost(), 7);
    }

    #[test]
    fn walk_matches_direct_assignment() {
        let pi = ReliabilityVector::new(3, vec![0.5, 0.3, 0.2, 0.1, 0.0, 0.9]).unwrap();
        let mut prev = 0.0;
        for m in BreakpointWalk::new(&pi).take(40) {
            assert!(m.lambda() > prev);
            prev = m.lambda();
            let direct = MultiplicityMatrix::assign(&pi, m.lambda());
            assert_eq!(direct.entries(), m.entries(), "lambda {}", m.lambda());
            assert_eq!(direct.cost(), m.cost());
        }
    }
}
