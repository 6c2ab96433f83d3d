use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

/// Tracks live and peak bytes of coverage storage across threads.
#[derive(Debug, Default, Clone)]
pub struct MemoryGauge(Arc<GaugeInner>);

#[derive(Debug, Default)]
struct GaugeInner {
    live: AtomicUsize,
    peak: AtomicUsize,
}

impl MemoryGauge {
    pub fn new() -> Self {
        Self::default()
    }

    fn grow(&self, bytes: usize) {
        let live = self.0.live.fetch_add(bytes, Ordering::SeqCst) + bytes;
        self.0.peak.fetch_max(live, Ordering::SeqCst);
    }

    fn shrink(&self, bytes: usize) {
        self.0.live.fetch_sub(bytes, Ordering::SeqCst);
    }

    pub fn peak(&self) -> usize {
        self.0.peak.load(Ordering::SeqCst)
    }

    pub fn live(&self) -> usize {
        self.0.live.load(Ordering::SeqCst)
    }
}

/// One bit per raw code in the window `[lo, hi)`.
#[derive(Debug)]
pub struct CoverageMap {
    words: Vec<u64>,
    lo: u64,
    hi: u64,
    gauge: Option<MemoryGauge>,
}

impl CoverageMap {
    pub fn new(lo: u64, hi: u64, gauge: Option<&MemoryGauge>) -> Self {
        assert!(lo <= hi);
        let words = vec![0u64; (hi - lo).div_ceil(64) as usize];
        if let Some(g) = gauge {
            g.grow(words.len() * 8);
        }
        CoverageMap { words, lo, hi, gauge: gauge.cloned() }
    }

    pub fn full(space: u64, gauge: Option<&MemoryGauge>) -> Self {
        Self::new(0, space, gauge)
    }

    pub fn window(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    #[inline]
    pub fn contains_index(&self, code: u64) -> bool {
        code >= self.lo && code < self.hi
    }

    /// Sets a bit for a code that is known to lie in the window.
    #[inline]
    pub fn set(&mut self, code: u64) {
        debug_assert!(self.contains_index(code));
        let i = code - self.lo;
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    /// Sets the bit if the code is inside the window; returns whether it was.
    #[inline]
    pub fn set_in_window(&mut self, code: u64) -> bool {
        if self.contains_index(code) {
            self.set(code);
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn get(&self, code: u64) -> bool {
        debug_assert!(self.contains_index(code));
        let i = code - self.lo;
        self.words[(i >> 6) as usize] >> (i & 63) & 1 != 0
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn size_bytes(&self) -> usize {
        self.words.len() * 8
    }
}

impl Drop for CoverageMap {
    fn drop(&mut self) {
        if let Some(g) = &self.gauge {
            g.shrink(self.words.len() * 8);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_bits() {
        let mut m = CoverageMap::new(100, 300, None);
        assert_eq!(m.size_bytes(), 32);
        assert!(!m.set_in_window(99));
        assert!(m.set_in_window(100));
        assert!(m.set_in_window(299));
        assert!(!m.set_in_window(300));
        assert!(m.get(100) && m.get(299) && !m.get(200));
        assert_eq!(m.count_ones(), 2);
    }

    #[test]
    fn gauge_tracks_peak() {
        let g = MemoryGauge::new();
        {
            let _a = CoverageMap::full(1 << 10, Some(&g));
            let _b = CoverageMap::full(1 << 9, Some(&g));
            assert_eq!(g.live(), 128 + 64);
        }
        let _c = CoverageMap::full(64, Some(&g));
        assert_eq!(g.live(), 8);
        assert_eq!(g.peak(), 192);
    }
}
