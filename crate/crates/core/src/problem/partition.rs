use super::ProblemError;

/// An ordered index set `{0..t}` with an equivalence relation.
///
/// Classes are kept sorted by their least element and members ascend, so a
/// partition has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl IndexPartition {
    pub fn new(t: usize, mut classes: Vec<Vec<usize>>) -> Result<Self, ProblemError> {
        let mut class_of = vec![usize::MAX; t];
        for c in classes.iter_mut() {
            if c.is_empty() {
                return Err(ProblemError::InvalidPartition("empty class".into()));
            }
            c.sort_unstable();
        }
        classes.sort_by_key(|c| c[0]);
        for (k, c) in classes.iter().enumerate() {
            for &i in c {
                if i >= t {
                    return Err(ProblemError::IndexOutOfRange { index: i, t });
                }
                if class_of[i] != usize::MAX {
                    return Err(ProblemError::InvalidPartition(format!("index {} lies in two classes", i + 1)));
                }
                class_of[i] = k;
            }
        }
        if let Some(i) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(ProblemError::InvalidPartition(format!("index {} lies in no class", i + 1)));
        }
        Ok(IndexPartition { class_of, classes })
    }

    /// Every index in its own class.
    pub fn discrete(t: usize) -> Self {
        IndexPartition { class_of: (0..t).collect(), classes: (0..t).map(|i| vec![i]).collect() }
    }

    pub fn t(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }
}
