"""Tiny builders and oracles shared across the test modules."""

from hearinglens.model import LEGISLATOR_ROLES, Hearing, Speaker, Utterance
from hearinglens.textutil import word_count


def mk_speaker(sid="leg1", name="Jordan Ellis", role="legislator", last=None):
    last_name = last if last is not None else name.split()[-1]
    return Speaker(id=sid, full_name=name, last_name=last_name, role=role)


def mk_utt(index, speaker, text, start=None, end=None, phase=None):
    return Utterance(
        index=index, speaker=speaker, text=text,
        start_seconds=start, end_seconds=end, phase=phase,
    )


def mk_hearing(utterances, roster=None, hid="h1", floor=False, vote=False, bill=None):
    if roster is None:
        roster = {u.speaker.id for u in utterances if u.speaker.role in ("legislator", "chair")}
    return Hearing(
        id=hid, committee_roster=frozenset(roster), utterances=tuple(utterances),
        bill_id=bill, is_floor_session=floor, vote_recorded=vote,
    )


def words(n, base="word"):
    return " ".join(f"{base}{i}" for i in range(n))


def oracle_chains(hearing, min_words=12):
    """Exhaustive enumeration of maximal alternating exchanges.

    Independent of the production detector: checks every candidate index
    range directly and keeps ranges that are valid chains, not extendable
    by one more turn pair on either side, and over the word floor.
    """
    utts = hearing.utterances
    n = len(utts)

    def is_leg(u):
        return u.speaker.role in LEGISLATOR_ROLES

    def valid(i, j):
        if i < 0 or j >= n or j <= i or (j - i) % 2 != 0:
            return False
        if not is_leg(utts[i]):
            return False
        who = utts[i].speaker.id
        for k in range(i, j + 1):
            if (k - i) % 2 == 0:
                if utts[k].speaker.id != who or not is_leg(utts[k]):
                    return False
            elif is_leg(utts[k]):
                return False
        return True

    out = []
    for i in range(n):
        for j in range(i + 2, n, 2):
            if valid(i, j) and not valid(i - 2, j) and not valid(i, j + 2):
                total = sum(word_count(utts[k].text) for k in range(i, j + 1))
                if total > min_words:
                    out.append((utts[i].speaker.id, tuple(range(i, j + 1)), total))
    return out
