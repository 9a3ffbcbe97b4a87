import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for helpers.py

from hearinglens.model import write_hearing_file
from hearinglens.synthetic import synth_city_names, synth_hearing_corpus, synth_registry_names


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    """A small on-disk synthetic corpus shared by the CLI tests."""
    root = tmp_path_factory.mktemp("corpus")
    names = synth_registry_names(120, seed=51)
    hearings = synth_hearing_corpus(10, names, seed=52)
    with open(root / "hearings.jsonl", "w", encoding="utf-8") as fh:
        write_hearing_file(hearings, fh)
    (root / "orgs.txt").write_text("\n".join(names) + "\n", encoding="utf-8")
    (root / "places.txt").write_text("\n".join(synth_city_names()) + "\n", encoding="utf-8")
    return root
