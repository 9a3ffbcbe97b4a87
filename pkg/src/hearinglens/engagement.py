"""Per-legislator engagement: counters, roll calls, and the scoring model.

Engagement is a weighted sum of four observable behaviors: verbally voting
when the committee secretary calls the roll, speaking in 30-second blocks,
sustained back-and-forth exchanges with non-legislators, and asking
questions. The default weights keep the four components in a comparable
range; ranking is invariant under scaling all four together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from hearinglens.matching import TokenSetMatcher
from hearinglens.model import LEGISLATOR_ROLES, Hearing, Speaker, Utterance, build_speaker_directory
from hearinglens.textutil import normalize_token, tokenize, word_count

# An utterance must beat this word count before it earns speaking credit.
SPEAKING_MIN_WORDS = 6

# One speaking instance per 30-second block; untimed utterances fall back
# to 75 words per block (~150 words per minute of speech).
BLOCK_SECONDS = 30.0
WORDS_PER_BLOCK = 75

# A back-and-forth chain must exceed this many words in total.
BACK_AND_FORTH_MIN_WORDS = 12


@dataclass(frozen=True)
class EngagementWeights:
    alpha: float = 0.5
    beta: float = 0.0005
    gamma: float = 0.00005
    delta: float = 0.01

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


DEFAULT_WEIGHTS = EngagementWeights()


@dataclass(frozen=True)
class EngagementCounters:
    number_votes: int = 0
    num_hearings_on_committee: int = 0
    num_times_speaking: int = 0
    num_words_in_back_and_forth: int = 0
    num_questions: int = 0

    def __post_init__(self):
        for name in (
            "number_votes",
            "num_hearings_on_committee",
            "num_times_speaking",
            "num_words_in_back_and_forth",
            "num_questions",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.number_votes > self.num_hearings_on_committee:
            raise ValueError("number_votes cannot exceed num_hearings_on_committee")


def merge_counters(a: EngagementCounters, b: EngagementCounters) -> EngagementCounters:
    """Field-wise sum; associative and commutative, so any reduction order works."""
    return EngagementCounters(
        number_votes=a.number_votes + b.number_votes,
        num_hearings_on_committee=a.num_hearings_on_committee + b.num_hearings_on_committee,
        num_times_speaking=a.num_times_speaking + b.num_times_speaking,
        num_words_in_back_and_forth=a.num_words_in_back_and_forth + b.num_words_in_back_and_forth,
        num_questions=a.num_questions + b.num_questions,
    )


@dataclass(frozen=True)
class EngagementBreakdown:
    vote_score: float
    speaking_score: float
    back_and_forth_score: float
    question_score: float
    total: Optional[float] = None

    def __post_init__(self):
        components = (
            self.vote_score + self.speaking_score + self.back_and_forth_score + self.question_score
        )
        if self.total is None:
            object.__setattr__(self, "total", components)
        elif abs(self.total - components) > 1e-12 * max(1.0, abs(components)):
            raise ValueError("total must equal the sum of the four component scores")


@dataclass(frozen=True)
class BackAndForth:
    """One maximal alternating exchange: L, N, L [, N, L ...] with a single
    legislator L and non-legislator turns in between."""

    legislator_id: str
    utterance_indices: tuple[int, ...]
    total_words: int


@dataclass(frozen=True)
class RollCall:
    hearing_id: str
    span: tuple[int, int]
    votes: frozenset[str]


def is_legislator(speaker: Speaker) -> bool:
    return speaker.role in LEGISLATOR_ROLES


def speaking_instances(
    utterance: Utterance,
    *,
    min_words: int = SPEAKING_MIN_WORDS,
    block_seconds: float = BLOCK_SECONDS,
    words_per_block: int = WORDS_PER_BLOCK,
) -> int:
    """Speaking credit for one utterance: one instance per 30-second block.

    Utterances of ``min_words`` words or fewer earn nothing (strict
    inequality). With timing present the block count comes from the
    duration; otherwise from the word count at ``words_per_block`` words
    per block.
    """
    words = word_count(utterance.text)
    if words <= min_words:
        return 0
    if utterance.start_seconds is not None and utterance.end_seconds is not None:
        return math.ceil((utterance.end_seconds - utterance.start_seconds) / block_seconds)
    return math.ceil(words / words_per_block)


def detect_back_and_forths(
    hearing: Hearing,
    *,
    min_words: int = BACK_AND_FORTH_MIN_WORDS,
    legislator_words_only: bool = False,
) -> list[BackAndForth]:
    """Maximal alternating legislator / non-legislator chains.

    A chain starts and ends with the same legislator, alternates strictly
    with single non-legislator turns, is reported once at full length, and
    is dropped unless its word total (every utterance in the chain, or only
    the legislator's with ``legislator_words_only``) strictly exceeds
    ``min_words``.
    """
    utts = hearing.utterances
    n = len(utts)
    chains = []
    for i in range(n):
        if not is_legislator(utts[i].speaker):
            continue
        who = utts[i].speaker.id
        # Skip chain starts that a previous chain for the same legislator covers.
        if (
            i >= 2
            and not is_legislator(utts[i - 1].speaker)
            and utts[i - 2].speaker.id == who
            and is_legislator(utts[i - 2].speaker)
        ):
            continue
        j = i
        while (
            j + 2 < n
            and not is_legislator(utts[j + 1].speaker)
            and utts[j + 2].speaker.id == who
            and is_legislator(utts[j + 2].speaker)
        ):
            j += 2
        if j == i:
            continue
        indices = tuple(range(i, j + 1))
        if legislator_words_only:
            total = sum(word_count(utts[k].text) for k in indices if utts[k].speaker.id == who)
        else:
            total = sum(word_count(utts[k].text) for k in indices)
        if total > min_words:
            chains.append(BackAndForth(who, indices, total))
    return chains


def count_questions(utterances: Iterable[Utterance]) -> int:
    """Total question marks across the given utterances."""
    return sum(utt.text.count("?") for utt in utterances)


def _roster_name_matcher(
    hearing: Hearing, directory: Mapping[str, Speaker]
) -> tuple[Optional[TokenSetMatcher], list[str]]:
    roster = sorted(hearing.committee_roster)
    phrases = []
    for idx, member in enumerate(roster):
        speaker = directory.get(member)
        if speaker is None or not speaker.last_name:
            continue
        toks = tuple(t for t in (normalize_token(t) for t in speaker.last_name.split()) if t)
        if toks:
            phrases.append((toks, idx))
    if not phrases:
        return None, roster
    return TokenSetMatcher(phrases), roster


def detect_roll_call(
    hearing: Hearing,
    speaker_directory: Optional[Mapping[str, Speaker]] = None,
    *,
    min_names: int = 2,
) -> Optional[RollCall]:
    """Find the roll-call region and who verbally voted in it.

    The region is the span of utterances tagged phase="roll-call", or,
    when no tags exist, the hull of committee-secretary utterances that
    mention roster last names, required to cover at least ``min_names``
    distinct names. A roster member votes if the secretary says their last
    name twice inside the region (call plus confirmation) or if they speak
    inside the region after the first mention of their name. Roster members
    who never speak anywhere in the corpus have no known last name and
    cannot be spotted.
    """
    directory = dict(build_speaker_directory([hearing]))
    if speaker_directory:
        for sid, speaker in speaker_directory.items():
            directory.setdefault(sid, speaker)
    matcher, roster = _roster_name_matcher(hearing, directory)

    def name_hits(utt: Utterance) -> list[int]:
        if matcher is None:
            return []
        norm = [normalize_token(t) for t in tokenize(utt.text)]
        return [payload for _s, _e, payload in matcher.scan(norm)]

    tagged = [u.index for u in hearing.utterances if u.phase == "roll-call"]
    if tagged:
        region = (min(tagged), max(tagged) + 1)
    else:
        mention_indices = []
        distinct: set[int] = set()
        for utt in hearing.utterances:
            if utt.speaker.role != "committee-secretary":
                continue
            hits = name_hits(utt)
            if hits:
                mention_indices.append(utt.index)
                distinct.update(hits)
        if not mention_indices or len(distinct) < min_names:
            return None
        region = (mention_indices[0], mention_indices[-1] + 1)

    mention_count: dict[int, int] = {}
    first_mention: dict[int, int] = {}
    for utt in hearing.utterances[region[0] : region[1]]:
        if utt.speaker.role != "committee-secretary":
            continue
        for payload in name_hits(utt):
            mention_count[payload] = mention_count.get(payload, 0) + 1
            first_mention.setdefault(payload, utt.index)

    votes: set[str] = set()
    for payload, count in mention_count.items():
        member = roster[payload]
        if count >= 2:
            votes.add(member)
            continue
        first = first_mention[payload]
        for utt in hearing.utterances[region[0] : region[1]]:
            if utt.speaker.id == member and utt.index > first:
                votes.add(member)
                break
    return RollCall(hearing.id, region, frozenset(votes))


def hearing_counters(
    hearing: Hearing,
    speaker_directory: Optional[Mapping[str, Speaker]] = None,
    *,
    min_words: int = SPEAKING_MIN_WORDS,
    block_seconds: float = BLOCK_SECONDS,
    words_per_block: int = WORDS_PER_BLOCK,
    back_and_forth_min_words: int = BACK_AND_FORTH_MIN_WORDS,
    legislator_words_only: bool = False,
) -> dict[str, EngagementCounters]:
    """Per-hearing counters for every roster member (hearing count 1 each)."""
    roll_call = detect_roll_call(hearing, speaker_directory)
    votes = roll_call.votes if roll_call is not None else frozenset()
    speaking: dict[str, int] = {}
    questions: dict[str, int] = {}
    for utt in hearing.utterances:
        sid = utt.speaker.id
        if sid not in hearing.committee_roster or not is_legislator(utt.speaker):
            continue
        speaking[sid] = speaking.get(sid, 0) + speaking_instances(
            utt, min_words=min_words, block_seconds=block_seconds, words_per_block=words_per_block
        )
        questions[sid] = questions.get(sid, 0) + utt.text.count("?")
    exchange_words: dict[str, int] = {}
    for chain in detect_back_and_forths(
        hearing, min_words=back_and_forth_min_words, legislator_words_only=legislator_words_only
    ):
        if chain.legislator_id in hearing.committee_roster:
            exchange_words[chain.legislator_id] = (
                exchange_words.get(chain.legislator_id, 0) + chain.total_words
            )
    out = {}
    for member in sorted(hearing.committee_roster):
        out[member] = EngagementCounters(
            number_votes=1 if member in votes else 0,
            num_hearings_on_committee=1,
            num_times_speaking=speaking.get(member, 0),
            num_words_in_back_and_forth=exchange_words.get(member, 0),
            num_questions=questions.get(member, 0),
        )
    return out


def accumulate(
    hearings: Sequence[Hearing],
    legislator_id: str,
    speaker_directory: Optional[Mapping[str, Speaker]] = None,
    **params,
) -> EngagementCounters:
    """Counters for one legislator over the hearings whose roster lists them."""
    if speaker_directory is None:
        speaker_directory = build_speaker_directory(hearings)
    total = EngagementCounters()
    found = False
    for hearing in hearings:
        if legislator_id not in hearing.committee_roster:
            continue
        found = True
        total = merge_counters(total, hearing_counters(hearing, speaker_directory, **params)[legislator_id])
    if not found:
        raise ValueError(f"no committee hearings for legislator {legislator_id!r}")
    return total


def compute_scores(
    counters: EngagementCounters, weights: EngagementWeights = DEFAULT_WEIGHTS
) -> EngagementBreakdown:
    """Weighted component scores and their sum.

    vote = alpha * votes / hearings; speaking = beta * speaking instances;
    back-and-forth = gamma * exchange words; questions = delta * question
    count. Raises on a zero hearing count rather than dividing by zero.
    """
    if counters.num_hearings_on_committee <= 0:
        raise ValueError("cannot score a legislator with zero committee hearings")
    vote = weights.alpha * counters.number_votes / counters.num_hearings_on_committee
    speaking = weights.beta * counters.num_times_speaking
    exchanges = weights.gamma * counters.num_words_in_back_and_forth
    questions = weights.delta * counters.num_questions
    return EngagementBreakdown(vote, speaking, exchanges, questions)


def load_weights_file(path) -> EngagementWeights:
    """Weights as key=value lines (alpha, beta, gamma, delta)."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}: line {lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip()
            if key not in ("alpha", "beta", "gamma", "delta"):
                raise ValueError(f"{path}: line {lineno}: unknown weight {key!r}")
            values[key] = float(raw.strip())
    return EngagementWeights(**values)
