"""Regenerate the shipped link fixtures (src/milnorkit/fixtures/*.json).

Every fixture is a Wirtinger presentation produced from an explicit braid
word or word in the free group; the provenance string records which.
"""
import argparse
import json
from pathlib import Path

from milnorkit.freegroup import FreeWord, commutator
from milnorkit.links import FIXTURE_DIR, BraidWord, braid_to_wirtinger, milnor_braid, unlink

x1, x2, x3 = (FreeWord.gen(i) for i in range(3))

BRAIDS = {
    "hopf": ("s1 s1", "closure of the 2-strand braid s1^2; positive Hopf link"),
    "whitehead": ("s1 s1 S2 s1 S2", "closure of s1^2 s2^-1 s1 s2^-1; Whitehead link (components: strands 1-2, strand 3)"),
    "borromean": ("s1 S2 s1 S2 s1 S2", "closure of (s1 s2^-1)^3; Borromean rings"),
    "borromean_stabilized": ("s1 S2 s1 S2 s1 S2 s3", "Markov stabilisation of the Borromean braid on 4 strands; same ordered link"),
    "borromean_rotated": ("S2 s1 S2 s1 S2 s1", "closure of (s2^-1 s1)^3, a cyclic rotation of the Borromean braid word; same link with components relabelled"),
}

MILNOR_WORDS = {
    "milnor_x1_x2": commutator(x1, x2),
    "milnor_x1x2_x2": commutator(commutator(x1, x2), x2),
    "milnor_x1_x1x2": commutator(x1, commutator(x1, x2)),
    "milnor_x1x2_x3": commutator(commutator(x1, x2), x3),
}


def build() -> dict[str, dict]:
    out = {}
    for m in (1, 2, 3):
        p = unlink(m)
        out[f"unlink{m}"] = p.to_json()
    for name, (word, note) in BRAIDS.items():
        p = braid_to_wirtinger(BraidWord.parse(word), name)
        data = p.to_json()
        data["provenance"] = note
        data["braid"] = word
        out[name] = data
    for name, w in MILNOR_WORDS.items():
        b = milnor_braid(w)
        p = braid_to_wirtinger(b, name)
        data = p.to_json()
        data["provenance"] = (f"pure braid closure: strands 1..m straight, last strand realises w = {w} "
                              f"as a product of pure braid generators")
        data["braid"] = str(b)
        data["word"] = str(w)
        out[name] = data
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=FIXTURE_DIR)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, data in build().items():
        (args.out / f"{name}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
