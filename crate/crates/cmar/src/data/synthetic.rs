//! Synthetic story generator with planted causal threads.
//!
//! Each generated story gets exactly one planted thread whose source tweet
//! carries marker words that determine the story's label (with probability
//! `signal_strength`); every other tweet is label-neutral filler drawn from a
//! shared unigram vocabulary. The turnaround annotation points at the planted
//! thread, so ground-truth causal attribution is known by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{DataError, Dataset, Provenance, Story, Thread, Tweet, VeracityLabel};

/// One marker word per class, in class-index order. A planted source tweet
/// repeats its label's marker so the signal survives truncation.
pub const LABEL_MARKER_WORDS: [&str; 3] = ["veritag", "falsetag", "murkytag"];

const MARKERS_PER_PLANTED_SOURCE: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_stories: usize,
    pub threads_per_story: usize,
    pub comments_per_thread: usize,
    /// Size of the shared filler vocabulary (`w0`, `w1`, ...).
    pub vocab_size: usize,
    /// Probability that a story's planted source tweet actually contains its
    /// label markers. At 1.0 every story is decidable from the planted thread.
    pub signal_strength: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_stories: 90,
            threads_per_story: 5,
            comments_per_thread: 1,
            vocab_size: 200,
            signal_strength: 1.0,
        }
    }
}

impl SynthConfig {
    fn validate(&self) -> Result<(), DataError> {
        let fail = |reason: &str| {
            Err(DataError::InvalidConfig {
                reason: reason.to_string(),
            })
        };
        if self.n_stories < 1 {
            return fail("n_stories must be >= 1");
        }
        if self.threads_per_story < 2 {
            return fail("threads_per_story must be >= 2");
        }
        if self.vocab_size < 1 {
            return fail("vocab_size must be >= 1");
        }
        if !(self.signal_strength > 0.0 && self.signal_strength <= 1.0) {
            return fail("signal_strength must be in (0, 1]");
        }
        Ok(())
    }

    /// Hex digest of the canonical config serialization; recorded in the
    /// dataset provenance so downstream artifacts can verify their inputs.
    pub fn digest(&self) -> String {
        let canonical = format!(
            "n_stories={};threads_per_story={};comments_per_thread={};vocab_size={};signal_strength={}",
            self.n_stories,
            self.threads_per_story,
            self.comments_per_thread,
            self.vocab_size,
            self.signal_strength
        );
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn filler_word(rng: &mut ChaCha8Rng, vocab_size: usize) -> String {
    format!("w{}", rng.gen_range(0..vocab_size))
}

fn filler_text(rng: &mut ChaCha8Rng, vocab_size: usize, words: usize) -> String {
    (0..words)
        .map(|_| filler_word(rng, vocab_size))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Generate a deterministic dataset. Identical `(cfg, seed)` pairs produce
/// bit-identical output; labels are assigned round-robin so the histogram is
/// balanced to within one story per class.
pub fn generate_synthetic(cfg: &SynthConfig, seed: u64) -> Result<Dataset, DataError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stories = Vec::with_capacity(cfg.n_stories);
    for story_idx in 0..cfg.n_stories {
        let label = VeracityLabel::ALL[story_idx % VeracityLabel::COUNT];
        let planted = rng.gen_range(0..cfg.threads_per_story);
        let carries_signal = rng.gen::<f64>() < cfg.signal_strength;
        let description = format!(
            "synthetic event {story_idx}: {}",
            filler_text(&mut rng, cfg.vocab_size, 3)
        );

        let mut threads = Vec::with_capacity(cfg.threads_per_story);
        for thread_idx in 0..cfg.threads_per_story {
            let source_id = format!("s{story_idx:05}t{thread_idx:02}");
            let mut words: Vec<String> = (0..4)
                .map(|_| filler_word(&mut rng, cfg.vocab_size))
                .collect();
            if thread_idx == planted && carries_signal {
                for _ in 0..MARKERS_PER_PLANTED_SOURCE {
                    words.push(LABEL_MARKER_WORDS[label.index()].to_string());
                }
                words.shuffle(&mut rng);
            }
            let source = Tweet {
                id: source_id.clone(),
                text: words.join(" "),
                parent_id: None,
            };
            let mut comments = Vec::with_capacity(cfg.comments_per_thread);
            for comment_idx in 0..cfg.comments_per_thread {
                // Reply either to the source or to the previous comment, so
                // parent chains of depth > 1 occur in the corpus.
                let parent = if comment_idx == 0 || rng.gen::<bool>() {
                    source_id.clone()
                } else {
                    format!("{source_id}c{:02}", comment_idx - 1)
                };
                comments.push(Tweet {
                    id: format!("{source_id}c{comment_idx:02}"),
                    text: filler_text(&mut rng, cfg.vocab_size, 3),
                    parent_id: Some(parent),
                });
            }
            threads.push(Thread { source, comments });
        }

        stories.push(Story {
            id: format!("story{story_idx:05}"),
            description,
            turnaround_thread_id: Some(threads[planted].id().to_string()),
            threads,
            label,
        });
    }
    Ok(Dataset {
        stories,
        provenance: Provenance::Synthetic {
            seed,
            config_digest: cfg.digest(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_inputs_give_identical_datasets() {
        let cfg = SynthConfig {
            n_stories: 3,
            threads_per_story: 5,
            ..SynthConfig::default()
        };
        let a = generate_synthetic(&cfg, 7).unwrap();
        let b = generate_synthetic(&cfg, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn full_signal_plants_markers_in_every_story() {
        let cfg = SynthConfig {
            n_stories: 30,
            signal_strength: 1.0,
            ..SynthConfig::default()
        };
        let d = generate_synthetic(&cfg, 11).unwrap();
        for story in &d.stories {
            let planted_id = story.turnaround_thread_id.as_deref().unwrap();
            let planted = story.thread(planted_id).unwrap();
            let marker = LABEL_MARKER_WORDS[story.label.index()];
            assert!(
                planted.source.text.split_whitespace().any(|w| w == marker),
                "story {} lacks marker {marker} in planted source: {:?}",
                story.id,
                planted.source.text
            );
        }
    }

    #[test]
    fn labels_are_balanced_within_one() {
        let cfg = SynthConfig {
            n_stories: 300,
            threads_per_story: 20,
            ..SynthConfig::default()
        };
        let d = generate_synthetic(&cfg, 3).unwrap();
        let hist = d.label_histogram();
        for count in hist {
            assert!((count as i64 - 100).abs() <= 1, "histogram {hist:?}");
        }
    }

    #[test]
    fn exactly_one_thread_is_annotated_and_it_is_planted() {
        let cfg = SynthConfig::default();
        for seed in [0u64, 1, 42, 99] {
            let d = generate_synthetic(&cfg, seed).unwrap();
            for story in &d.stories {
                let tid = story.turnaround_thread_id.as_deref().unwrap();
                assert_eq!(story.threads.iter().filter(|t| t.id() == tid).count(), 1);
            }
        }
    }

    #[test]
    fn generated_stories_pass_loader_validation() {
        let cfg = SynthConfig {
            n_stories: 12,
            comments_per_thread: 3,
            ..SynthConfig::default()
        };
        let d = generate_synthetic(&cfg, 5).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        super::super::save_stories(&d, f.path()).unwrap();
        let loaded = super::super::load_stories(f.path()).unwrap();
        assert_eq!(loaded.stories, d.stories);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let bad = SynthConfig {
            threads_per_story: 1,
            ..SynthConfig::default()
        };
        assert!(matches!(
            generate_synthetic(&bad, 0),
            Err(DataError::InvalidConfig { .. })
        ));
        let bad = SynthConfig {
            signal_strength: 0.0,
            ..SynthConfig::default()
        };
        assert!(generate_synthetic(&bad, 0).is_err());
    }
}
