use rand::Rng;

/// Dense Q-table addressed by (state index, action index), zero-initialized.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    num_states: usize,
    num_actions: usize,
    values: Vec<f64>,
}

impl QTable {
    pub fn zeros(num_states: usize, num_actions: usize) -> Self {
        QTable {
            num_states,
            num_actions,
            values: vec![0.0; num_states * num_actions],
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    pub fn get(&self, state: usize, action: usize) -> f64 {
        self.values[state * self.num_actions + action]
    }

    pub fn set(&mut self, state: usize, action: usize, value: f64) {
        self.values[state * self.num_actions + action] = value;
    }

    pub fn row(&self, state: usize) -> &[f64] {
        let start = state * self.num_actions;
        &self.values[start..start + self.num_actions]
    }

    pub fn row_mut(&mut self, state: usize) -> &mut [f64] {
        let start = state * self.num_actions;
        &mut self.values[start..start + self.num_actions]
    }

    /// All entries, state-major.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Q <- (1 - lr) Q + lr * target`
    pub fn blend(&mut self, state: usize, action: usize, learning_rate: f64, target: f64) {
        let cell = &mut self.values[state * self.num_actions + action];
        *cell = (1.0 - learning_rate) * *cell + learning_rate * target;
    }
}

/// Index of a maximal entry; ties are broken uniformly from `rng`.
/// A draw is only consumed when more than one entry attains the maximum.
pub fn argmax_random_ties<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> usize {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut ties = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == max)
        .map(|(i, _)| i);
    let first = ties.next().expect("argmax of an empty row");
    let count = 1 + ties.clone().count();
    if count == 1 {
        return first;
    }
    let pick = rng.random_range(0..count);
    if pick == 0 {
        first
    } else {
        ties.nth(pick - 1).unwrap()
    }
}
