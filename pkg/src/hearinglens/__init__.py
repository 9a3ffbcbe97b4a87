"""hearinglens: feature extraction from legislative committee-hearing transcripts.

Four engineered features over transcript corpora: speaker-affiliated
organizations in public comments, commenter stance, per-legislator
engagement scores, and absentee records, plus session-level rankings, an
evaluation harness and training-corpus generation. See the README for the
CLI and file formats.
"""

__version__ = "0.1.0"
