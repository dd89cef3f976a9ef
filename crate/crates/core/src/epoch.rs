//! Arrays that reset in O(1) between sources.

/// A fixed-length array whose entries read as `default` unless written since
/// the last [`EpochVec::reset`].
#[derive(Clone, Debug)]
pub struct EpochVec<T: Clone> {
    stamps: Vec<u32>,
    data: Vec<T>,
    epoch: u32,
    default: T,
}

impl<T: Clone> EpochVec<T> {
    pub fn new(len: usize, default: T) -> Self {
        EpochVec {
            stamps: vec![0; len],
            data: vec![default.clone(); len],
            epoch: 1,
            default,
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Makes every entry read as the default again.
    pub fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> &T {
        if self.stamps[i] == self.epoch {
            &self.data[i]
        } else {
            &self.default
        }
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize) -> &mut T {
        if self.stamps[i] != self.epoch {
            self.stamps[i] = self.epoch;
            self.data[i].clone_from(&self.default);
        }
        &mut self.data[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: T) {
        self.stamps[i] = self.epoch;
        self.data[i] = value;
    }

    #[inline]
    pub fn is_set(&self, i: usize) -> bool {
        self.stamps[i] == self.epoch
    }
}
