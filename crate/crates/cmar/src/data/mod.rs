//! Domain types, JSON-lines story ingestion, and the synthetic generator.
//!
//! A *story* is a news event: an ordered set of threads (a source tweet plus
//! its reply comments), one three-class veracity label, and optionally the id
//! of the thread whose source tweet settled the story's veracity (the
//! "turnaround" annotation used as gold by the evaluation protocol).
//!
//! Stories are stored one JSON object per line. The wire schema is strict:
//! unknown fields are rejected and sources may not carry a `parent_id`.

mod split;
mod synthetic;

pub use split::{split, SplitRatios};
pub use synthetic::{generate_synthetic, SynthConfig, LABEL_MARKER_WORDS};

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Three-class veracity label with a stable class-index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VeracityLabel {
    True,
    False,
    Unverified,
}

impl VeracityLabel {
    pub const COUNT: usize = 3;
    pub const ALL: [VeracityLabel; 3] = [
        VeracityLabel::True,
        VeracityLabel::False,
        VeracityLabel::Unverified,
    ];

    /// Class index: True=0, False=1, Unverified=2.
    pub fn index(self) -> usize {
        match self {
            VeracityLabel::True => 0,
            VeracityLabel::False => 1,
            VeracityLabel::Unverified => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<VeracityLabel> {
        Self::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VeracityLabel::True => "true",
            VeracityLabel::False => "false",
            VeracityLabel::Unverified => "unverified",
        }
    }
}

impl fmt::Display for VeracityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single tweet. `parent_id` is absent for source tweets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tweet {
    pub id: String,
    pub text: String,
    pub parent_id: Option<String>,
}

/// A source tweet and its comments, ordered as posted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub source: Tweet,
    pub comments: Vec<Tweet>,
}

impl Thread {
    /// Thread id is its source tweet's id.
    pub fn id(&self) -> &str {
        &self.source.id
    }

    /// Source first, then comments in order.
    pub fn tweets(&self) -> impl Iterator<Item = &Tweet> {
        std::iter::once(&self.source).chain(self.comments.iter())
    }
}

/// A news event: threads, label, and the optional gold turnaround thread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Story {
    pub id: String,
    pub description: String,
    pub threads: Vec<Thread>,
    pub label: VeracityLabel,
    pub turnaround_thread_id: Option<String>,
}

impl Story {
    pub fn thread(&self, thread_id: &str) -> Option<&Thread> {
        self.threads.iter().find(|t| t.id() == thread_id)
    }
}

/// Where a dataset came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Loaded,
    Synthetic { seed: u64, config_digest: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub stories: Vec<Story>,
    pub provenance: Provenance,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.stories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stories.is_empty()
    }

    /// Per-class story counts in class-index order.
    pub fn label_histogram(&self) -> [usize; VeracityLabel::COUNT] {
        let mut h = [0usize; VeracityLabel::COUNT];
        for s in &self.stories {
            h[s.label.index()] += 1;
        }
        h
    }
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("duplicate id {id:?}")]
    DuplicateId { id: String },
    #[error("comment {tweet_id:?} does not resolve to its thread's source")]
    DanglingParent { tweet_id: String },
    #[error("story {story_id:?}: turnaround_thread_id names no thread")]
    DanglingTurnaround { story_id: String },
    #[error("invalid synthetic config: {reason}")]
    InvalidConfig { reason: String },
    #[error("split ratios must be positive and sum to 1")]
    InvalidRatios,
}

// Wire structs mirror the line schema exactly. Keeping them separate from
// the domain types lets serde reject a `parent_id` on a source tweet the
// same way it rejects any other unknown field.
mod wire {
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct SourceJson {
        pub id: String,
        pub text: String,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct CommentJson {
        pub id: String,
        pub text: String,
        pub parent_id: String,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ThreadJson {
        pub source: SourceJson,
        pub comments: Vec<CommentJson>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct StoryJson {
        pub id: String,
        pub description: String,
        pub label: super::VeracityLabel,
        pub turnaround_thread_id: Option<String>,
        pub threads: Vec<ThreadJson>,
    }
}

impl From<&Story> for wire::StoryJson {
    fn from(s: &Story) -> Self {
        wire::StoryJson {
            id: s.id.clone(),
            description: s.description.clone(),
            label: s.label,
            turnaround_thread_id: s.turnaround_thread_id.clone(),
            threads: s
                .threads
                .iter()
                .map(|t| wire::ThreadJson {
                    source: wire::SourceJson {
                        id: t.source.id.clone(),
                        text: t.source.text.clone(),
                    },
                    comments: t
                        .comments
                        .iter()
                        .map(|c| wire::CommentJson {
                            id: c.id.clone(),
                            text: c.text.clone(),
                            parent_id: c.parent_id.clone().unwrap_or_default(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl From<wire::StoryJson> for Story {
    fn from(s: wire::StoryJson) -> Self {
        Story {
            id: s.id,
            description: s.description,
            label: s.label,
            turnaround_thread_id: s.turnaround_thread_id,
            threads: s
                .threads
                .into_iter()
                .map(|t| Thread {
                    source: Tweet {
                        id: t.source.id,
                        text: t.source.text,
                        parent_id: None,
                    },
                    comments: t
                        .comments
                        .into_iter()
                        .map(|c| Tweet {
                            id: c.id,
                            text: c.text,
                            parent_id: Some(c.parent_id),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Check the per-story invariants: nonempty unique tweet ids, comments that
/// transitively root at their thread's source, at least one thread, and a
/// turnaround id matching exactly one thread.
fn validate_story(story: &Story, line: usize) -> Result<(), DataError> {
    if story.id.is_empty() {
        return Err(DataError::MalformedLine {
            line,
            reason: "story id is empty".into(),
        });
    }
    if story.threads.is_empty() {
        return Err(DataError::MalformedLine {
            line,
            reason: format!("story {:?} has no threads", story.id),
        });
    }
    let mut seen = HashSet::new();
    for thread in &story.threads {
        for tweet in thread.tweets() {
            if tweet.id.is_empty() {
                return Err(DataError::MalformedLine {
                    line,
                    reason: format!("empty tweet id in story {:?}", story.id),
                });
            }
            if !seen.insert(tweet.id.clone()) {
                return Err(DataError::DuplicateId {
                    id: tweet.id.clone(),
                });
            }
        }
    }
    for thread in &story.threads {
        let ids: HashSet<&str> = thread.tweets().map(|t| t.id.as_str()).collect();
        for comment in &thread.comments {
            // Walk the parent chain; it must reach the source within the
            // thread and without revisiting a tweet.
            let mut cur = comment.parent_id.as_deref().ok_or(DataError::DanglingParent {
                tweet_id: comment.id.clone(),
            })?;
            let mut visited = HashSet::new();
            visited.insert(comment.id.as_str());
            loop {
                if !ids.contains(cur) || !visited.insert(cur) {
                    return Err(DataError::DanglingParent {
                        tweet_id: comment.id.clone(),
                    });
                }
                if cur == thread.source.id {
                    break;
                }
                let next = thread
                    .comments
                    .iter()
                    .find(|c| c.id == cur)
                    .and_then(|c| c.parent_id.as_deref());
                match next {
                    Some(p) => cur = p,
                    None => {
                        return Err(DataError::DanglingParent {
                            tweet_id: comment.id.clone(),
                        })
                    }
                }
            }
        }
    }
    if let Some(tid) = &story.turnaround_thread_id {
        let matches = story.threads.iter().filter(|t| t.id() == tid).count();
        if matches != 1 {
            return Err(DataError::DanglingTurnaround {
                story_id: story.id.clone(),
            });
        }
    }
    Ok(())
}

/// Load a JSON-lines story file. Order is preserved; blank lines are not
/// allowed; duplicate story ids are rejected.
pub fn load_stories(path: impl AsRef<Path>) -> Result<Dataset, DataError> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);
    let mut stories = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let text = line?;
        let parsed: wire::StoryJson =
            serde_json::from_str(&text).map_err(|e| DataError::MalformedLine {
                line: line_no,
                reason: e.to_string(),
            })?;
        let story: Story = parsed.into();
        validate_story(&story, line_no)?;
        if !ids.insert(story.id.clone()) {
            return Err(DataError::DuplicateId { id: story.id });
        }
        stories.push(story);
    }
    Ok(Dataset {
        stories,
        provenance: Provenance::Loaded,
    })
}

/// Serialize one story to its JSON-lines form.
pub fn story_to_json(story: &Story) -> String {
    serde_json::to_string(&wire::StoryJson::from(story)).expect("story serialization")
}

/// Write a dataset as one JSON object per line.
pub fn save_stories(dataset: &Dataset, path: impl AsRef<Path>) -> Result<(), DataError> {
    let mut file = File::create(path.as_ref())?;
    for story in &dataset.stories {
        writeln!(file, "{}", story_to_json(story))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn sample_line() -> &'static str {
        r#"{"id":"ev1","description":"a test event","label":"false","turnaround_thread_id":"t1","threads":[{"source":{"id":"t1","text":"breaking news report"},"comments":[{"id":"c1","text":"is this real","parent_id":"t1"},{"id":"c2","text":"no it is not","parent_id":"c1"}]},{"source":{"id":"t2","text":"unrelated chatter"},"comments":[]}]}"#
    }

    fn write_lines(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        f
    }

    #[test]
    fn loads_valid_story_with_two_threads() {
        let f = write_lines(&[sample_line()]);
        let d = load_stories(f.path()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.stories[0].threads.len(), 2);
        assert_eq!(d.stories[0].label, VeracityLabel::False);
        assert_eq!(d.provenance, Provenance::Loaded);
    }

    #[test]
    fn empty_file_yields_empty_dataset() {
        let f = tempfile::NamedTempFile::new().unwrap();
        let d = load_stories(f.path()).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn dangling_turnaround_is_rejected() {
        let line = sample_line().replace(r#""turnaround_thread_id":"t1""#, r#""turnaround_thread_id":"nope""#);
        let f = write_lines(&[&line]);
        match load_stories(f.path()) {
            Err(DataError::DanglingTurnaround { story_id }) => assert_eq!(story_id, "ev1"),
            other => panic!("expected DanglingTurnaround, got {other:?}"),
        }
    }

    #[test]
    fn dangling_parent_is_rejected() {
        let line = sample_line().replace(r#""parent_id":"c1""#, r#""parent_id":"ghost""#);
        let f = write_lines(&[&line]);
        assert!(matches!(
            load_stories(f.path()),
            Err(DataError::DanglingParent { .. })
        ));
    }

    #[test]
    fn parent_cycle_is_rejected() {
        // c1 -> c2 -> c1 never reaches the source.
        let line = r#"{"id":"ev1","description":"d","label":"true","turnaround_thread_id":null,"threads":[{"source":{"id":"t1","text":"src"},"comments":[{"id":"c1","text":"a","parent_id":"c2"},{"id":"c2","text":"b","parent_id":"c1"}]}]}"#;
        let f = write_lines(&[line]);
        assert!(matches!(
            load_stories(f.path()),
            Err(DataError::DanglingParent { .. })
        ));
    }

    #[test]
    fn duplicate_story_id_is_rejected() {
        let f = write_lines(&[sample_line(), sample_line()]);
        assert!(matches!(
            load_stories(f.path()),
            Err(DataError::DuplicateId { .. })
        ));
    }

    #[test]
    fn unknown_field_is_rejected() {
        let line = sample_line().replace(r#""description":"#, r#""bogus":1,"description":"#);
        let f = write_lines(&[&line]);
        assert!(matches!(
            load_stories(f.path()),
            Err(DataError::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn parent_id_on_source_is_rejected() {
        let line = sample_line().replace(
            r#""source":{"id":"t2","text":"unrelated chatter"}"#,
            r#""source":{"id":"t2","text":"unrelated chatter","parent_id":"t1"}"#,
        );
        let f = write_lines(&[&line]);
        assert!(matches!(
            load_stories(f.path()),
            Err(DataError::MalformedLine { .. })
        ));
    }

    #[test]
    fn round_trip_preserves_dataset() {
        let f = write_lines(&[sample_line()]);
        let d = load_stories(f.path()).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        save_stories(&d, out.path()).unwrap();
        let d2 = load_stories(out.path()).unwrap();
        assert_eq!(d.stories, d2.stories);
    }

    #[test]
    fn label_indices_are_stable() {
        assert_eq!(VeracityLabel::True.index(), 0);
        assert_eq!(VeracityLabel::False.index(), 1);
        assert_eq!(VeracityLabel::Unverified.index(), 2);
        assert_eq!(VeracityLabel::from_index(1), Some(VeracityLabel::False));
        assert_eq!(VeracityLabel::from_index(3), None);
    }
}
