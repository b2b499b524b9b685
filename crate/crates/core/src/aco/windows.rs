use super::DistanceMatrix;

/// Candidate-list width for a city with `n` neighbor cities.
pub fn little_window_size(n: usize) -> usize {
    let cap = |w: usize| n.saturating_sub(1).min(w);
    match n {
        0..=20 => cap(8),
        21..=100 => cap(9),
        101..=143 => cap(13),
        144..=999 => cap(19),
        1000..=3999 => cap(100),
        _ => n / 10,
    }
}

/// Per-city candidate lists: the `w` nearest other cities, nearest first, ties by lower id.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSets {
    lists: Vec<Vec<usize>>,
}

impl WindowSets {
    pub fn get(&self, city: usize) -> &[usize] {
        &self.lists[city]
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

pub fn build_windows(dm: &DistanceMatrix, w: usize) -> WindowSets {
    let n = dm.len();
    let lists = (0..n)
        .map(|i| {
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| dm.get(i, a).total_cmp(&dm.get(i, b)).then(a.cmp(&b)));
            others.truncate(w);
            others
        })
        .collect();
    WindowSets { lists }
}
