use std::fmt;
use std::str::FromStr;

/// An inclusive twist range `lo..hi` (or `lo..=hi`, or a single value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HRange {
    pub lo: u64,
    pub hi: u64,
}

impl HRange {
    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }

    /// Consecutive sub-ranges of at most `size` values, in order.
    pub fn chunks(&self, size: u64) -> Vec<HRange> {
        let size = size.max(1);
        let mut out = Vec::new();
        let mut lo = self.lo;
        loop {
            let hi = lo.saturating_add(size - 1).min(self.hi);
            out.push(HRange { lo, hi });
            if hi == self.hi {
                return out;
            }
            lo = hi + 1;
        }
    }
}

impl FromStr for HRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .replace('_', "")
                .parse::<u64>()
                .map_err(|_| format!("bad twist `{t}` in range `{s}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let h = num(s)?;
                (h, h)
            }
        };
        if lo == 0 {
            return Err("twists start at 1".into());
        }
        if hi < lo {
            return Err(format!("empty range `{s}`"));
        }
        Ok(HRange { lo, hi })
    }
}

impl fmt::Display for HRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!("1..100".parse(), Ok(HRange { lo: 1, hi: 100 }));
        assert_eq!("3..=3".parse(), Ok(HRange { lo: 3, hi: 3 }));
        assert_eq!("7".parse(), Ok(HRange { lo: 7, hi: 7 }));
        assert_eq!("1..100_000".parse(), Ok(HRange { lo: 1, hi: 100_000 }));
        assert!("0..5".parse::<HRange>().is_err());
        assert!("5..4".parse::<HRange>().is_err());
        assert!("a..4".parse::<HRange>().is_err());
    }

    #[test]
    fn chunks_cover_in_order() {
        let r = HRange { lo: 5, hi: 27 };
        let chunks = r.chunks(10);
        assert_eq!(chunks.len(), 3);
        let all: Vec<u64> = chunks.iter().flat_map(|c| c.iter()).collect();
        assert_eq!(all, r.iter().collect::<Vec<_>>());
        assert_eq!(HRange { lo: 1, hi: 1 }.chunks(4).len(), 1);
        let top = HRange {
            lo: u64::MAX - 2,
            hi: u64::MAX,
        };
        assert_eq!(top.chunks(2).len(), 2);
    }
}
