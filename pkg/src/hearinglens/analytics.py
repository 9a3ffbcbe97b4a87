"""Session-level aggregation: hearing filters and the two rankings.

Organization counts are per-hearing set counts: a group that floods one
hearing with comments still counts once there, because breadth across
hearings is the interesting signal. Engagement rankings sort by total
score, ties alphabetically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from hearinglens import stance
from hearinglens.engagement import EngagementBreakdown, detect_roll_call
from hearinglens.gazetteer import normalize_org_name
from hearinglens.model import LEGISLATOR_ROLES, Hearing, Speaker, Utterance

# Roles whose phrase-bearing utterances count as public comments when no
# phase tags exist. Secretaries and legislators never give public comment.
_COMMENT_ROLES = frozenset({"public-commenter", "witness", "bill-presenter", "other"})


@dataclass(frozen=True)
class SessionReport:
    org_rankings: tuple[tuple[str, int], ...]
    engagement_rankings: tuple[tuple[str, EngagementBreakdown], ...]
    filter_stats: dict[str, int] = field(default_factory=dict)


def has_vote_evidence(hearing: Hearing, speaker_directory: Optional[Mapping[str, Speaker]] = None) -> bool:
    return hearing.vote_recorded or detect_roll_call(hearing, speaker_directory) is not None


def is_public_comment(utterance: Utterance) -> bool:
    """Phase tag when present; otherwise a conservative heuristic: a
    non-legislator utterance carrying at least one stance phrase."""
    if utterance.phase is not None:
        return utterance.phase == "public-comment"
    if utterance.speaker.role not in _COMMENT_ROLES:
        return False
    return sum(stance.count_phrases(utterance.text).as_tuple()) > 0


def public_comments(hearing: Hearing) -> list[Utterance]:
    return [utt for utt in hearing.utterances if is_public_comment(utt)]


def filter_for_affiliation(
    hearings: Sequence[Hearing],
    speaker_directory: Optional[Mapping[str, Speaker]] = None,
    stats: Optional[dict[str, int]] = None,
) -> list[Hearing]:
    """Keep hearings with vote evidence and at least one public comment.

    Filters apply in sequence and ``stats`` (when given) collects how many
    hearings each step removed.
    """
    voted = [h for h in hearings if has_vote_evidence(h, speaker_directory)]
    kept = [h for h in voted if public_comments(h)]
    if stats is not None:
        stats["removed_no_vote"] = len(hearings) - len(voted)
        stats["removed_no_public_comment"] = len(voted) - len(kept)
    return kept


def filter_for_engagement(
    hearings: Sequence[Hearing],
    speaker_directory: Optional[Mapping[str, Speaker]] = None,
    stats: Optional[dict[str, int]] = None,
    *,
    min_speaking_legislators: int = 3,
) -> list[Hearing]:
    """Keep committee hearings with vote evidence where at least
    ``min_speaking_legislators`` distinct roster members spoke; floor
    sessions are dropped."""
    voted = [h for h in hearings if has_vote_evidence(h, speaker_directory)]

    def speaking_members(hearing: Hearing) -> int:
        return len({u.speaker.id for u in hearing.utterances if u.speaker.id in hearing.committee_roster})

    talked = [h for h in voted if speaking_members(h) >= min_speaking_legislators]
    kept = [h for h in talked if not h.is_floor_session]
    if stats is not None:
        stats["removed_no_vote"] = len(hearings) - len(voted)
        stats["removed_few_speakers"] = len(voted) - len(talked)
        stats["removed_floor_session"] = len(talked) - len(kept)
    return kept


def org_frequency(
    per_hearing_orgs: Iterable[Iterable[str]],
    *,
    exclusions: Iterable[str] = (),
) -> list[tuple[str, int]]:
    """Rank organizations by the number of hearings they commented in.

    Within one hearing duplicates collapse (set semantics on normalized
    names); across hearings the first-seen spelling is displayed. Names on
    the exclusion list (hand-curated frequent false positives) never
    appear. Sorted by count descending, then name ascending.
    """
    excluded = {normalize_org_name(name) for name in exclusions}
    counts: dict[str, int] = {}
    display: dict[str, str] = {}
    for orgs in per_hearing_orgs:
        seen: set[str] = set()
        for org in orgs:
            norm = normalize_org_name(org)
            if not norm or norm in excluded or norm in seen:
                continue
            seen.add(norm)
            counts[norm] = counts.get(norm, 0) + 1
            display.setdefault(norm, org)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], display[item[0]]))
    return [(display[norm], count) for norm, count in ranked]


def rank_legislators(
    breakdowns: Iterable[tuple[str, EngagementBreakdown]],
) -> list[tuple[str, EngagementBreakdown]]:
    """Sort by total engagement descending; ties alphabetically by name."""
    return sorted(breakdowns, key=lambda item: (-item[1].total, item[0]))
