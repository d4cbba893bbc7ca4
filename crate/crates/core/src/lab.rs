//! Shared evaluation context: the precision configuration plus memo tables
//! for the expensive intermediate results (ladder steps, interval moments,
//! Gram-point values, the S₁ profile, fitted c̄).
//!
//! Every memoized value is a pure function of its key and the configuration,
//! so lookups never change results.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, MutexGuard};

use crate::cache::{CacheEntry, ConstantsCache};
use crate::config::PrecisionConfig;
use crate::error::{Result, ZlabError};
use crate::ladders::{reverse_step, LadderStep};
use crate::moments::{self, cbar_cache_key, CbarEstimate, MomentEstimate};
use crate::sums::GramValues;
use crate::zeta::S1Profile;

type Memo<K, V> = Mutex<HashMap<K, V>>;

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

fn memoized<K: Eq + Hash + Copy, V: Clone>(memo: &Memo<K, V>, key: K, f: impl FnOnce() -> Result<V>) -> Result<V> {
    if let Some(v) = lock(memo).get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    lock(memo).insert(key, v.clone());
    Ok(v)
}

pub struct Lab {
    cfg: PrecisionConfig,
    cache: Option<Mutex<ConstantsCache>>,
    steps: Memo<u64, LadderStep>,
    critical: Memo<(u64, u64), MomentEstimate>,
    sigma: Memo<(u64, u64, u64), MomentEstimate>,
    gram: Memo<(u64, u64), Arc<GramValues>>,
    cbar: Memo<(u32, u64, u64), CbarEstimate>,
    profile: Mutex<Option<Arc<S1Profile>>>,
}

impl Lab {
    pub fn new(cfg: PrecisionConfig) -> Result<Lab> {
        cfg.validate()?;
        Ok(Lab {
            cfg,
            cache: None,
            steps: Memo::default(),
            critical: Memo::default(),
            sigma: Memo::default(),
            gram: Memo::default(),
            cbar: Memo::default(),
            profile: Mutex::new(None),
        })
    }

    /// Attaches a constants cache; fitted c̄ values are persisted there.
    pub fn with_cache(mut self, cache: ConstantsCache) -> Lab {
        self.cache = Some(Mutex::new(cache));
        self
    }

    pub fn cfg(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn reverse_step(&self, t: f64) -> Result<LadderStep> {
        memoized(&self.steps, t.to_bits(), || reverse_step(&self.cfg, t))
    }

    pub fn reverse_iterate(&self, t: f64) -> Result<f64> {
        self.reverse_step(t).map(|s| s.upper)
    }

    pub fn second_moment_critical(&self, lo: f64, hi: f64) -> Result<MomentEstimate> {
        memoized(&self.critical, (lo.to_bits(), hi.to_bits()), || {
            moments::second_moment_critical(&self.cfg, lo, hi)
        })
    }

    pub fn second_moment_sigma(&self, sigma: f64, lo: f64, hi: f64) -> Result<MomentEstimate> {
        memoized(&self.sigma, (sigma.to_bits(), lo.to_bits(), hi.to_bits()), || {
            moments::second_moment_sigma(&self.cfg, sigma, lo, hi)
        })
    }

    pub fn gram_values(&self, lo: f64, hi: f64) -> Result<Arc<GramValues>> {
        memoized(&self.gram, (lo.to_bits(), hi.to_bits()), || {
            GramValues::collect(&self.cfg, lo, hi).map(Arc::new)
        })
    }

    /// An S₁ profile covering [0, t_max]. Profiles agree bit for bit on
    /// their common range, so a longer cached one is reused as is.
    pub fn s1_profile(&self, t_max: f64) -> Result<Arc<S1Profile>> {
        let mut slot = lock(&self.profile);
        if let Some(p) = slot.as_ref() {
            if p.t_max() >= t_max {
                return Ok(p.clone());
            }
        }
        let target = slot.as_ref().map_or(t_max, |p| t_max.max(1.25 * p.t_max()));
        let p = Arc::new(S1Profile::build(&self.cfg, target)?);
        *slot = Some(p.clone());
        Ok(p)
    }

    pub fn s1_moment(&self, l: u32, lo: f64, hi: f64) -> Result<MomentEstimate> {
        moments::s1_moment(&*self.s1_profile(hi)?, l, lo, hi)
    }

    pub fn s1_moments(&self, ls: &[u32], lo: f64, hi: f64) -> Result<Vec<MomentEstimate>> {
        moments::s1_moments(&*self.s1_profile(hi)?, ls, lo, hi)
    }

    /// Fits c̄(l) on [T, T + H] and records it in the constants cache.
    pub fn estimate_cbar(&self, l: u32, t: f64, h: f64) -> Result<CbarEstimate> {
        let est = memoized(&self.cbar, (l, t.to_bits(), h.to_bits()), || {
            moments::check_window(t, h)?;
            moments::estimate_cbar(&*self.s1_profile(t + h)?, l, t, h)
        })?;
        if let Some(cache) = &self.cache {
            lock(cache).put_cbar(&est)?;
        }
        Ok(est)
    }

    /// A previously fitted c̄(l) for the window (T, H), from this run or the
    /// constants cache.
    pub fn cached_cbar(&self, l: u32, t: f64, h: f64) -> Result<(String, CacheEntry)> {
        let key = cbar_cache_key(l, t, h);
        if let Some(e) = lock(&self.cbar).get(&(l, t.to_bits(), h.to_bits())) {
            return Ok((key, CacheEntry { cbar: e.cbar, spread: e.spread, timestamp: 0 }));
        }
        let found = self.cache.as_ref().and_then(|c| lock(c).get(&key).copied());
        found
            .map(|e| (key.clone(), e))
            .ok_or_else(|| ZlabError::Config(format!("no cached constant under {key}; run cbar first")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_config() {
        let cfg = PrecisionConfig { abs_tol: -1.0, ..Default::default() };
        assert!(Lab::new(cfg).is_err());
    }

    #[test]
    fn memo_returns_identical_values() {
        let lab = Lab::new(PrecisionConfig::default()).unwrap();
        let a = lab.second_moment_critical(100.0, 110.0).unwrap();
        let b = lab.second_moment_critical(100.0, 110.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, moments::second_moment_critical(lab.cfg(), 100.0, 110.0).unwrap());
    }

    #[test]
    fn missing_cbar_is_a_config_error() {
        let lab = Lab::new(PrecisionConfig::default()).unwrap();
        assert!(matches!(lab.cached_cbar(1, 1e4, 1e3), Err(ZlabError::Config(_))));
    }

    #[test]
    fn profile_grows_and_is_reused() {
        let lab = Lab::new(PrecisionConfig::default()).unwrap();
        let a = lab.s1_profile(100.0).unwrap();
        let b = lab.s1_profile(50.0).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = lab.s1_profile(101.0).unwrap();
        assert!(c.t_max() >= 125.0);
        assert_eq!(a.s1(90.0).unwrap(), c.s1(90.0).unwrap());
    }
}
