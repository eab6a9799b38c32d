"""Freeze 200 words with their CMU Pronouncing Dictionary syllable counts.

Usage: python3 scripts/gen_syllable_fixture.py /path/to/tagged-en-oanc.txt > crates/core/tests/fixtures/syllables_cmudict.tsv
"""
import random
import re
import sys

import cmudict

cmu = cmudict.dict()
words = set()
for line in open(sys.argv[1], encoding="utf-8"):
    for tok in line.split():
        w = tok.rsplit("/", 1)[0].lower()
        if re.fullmatch(r"[a-z]{2,}", w) and w in cmu:
            words.add(w)
rng = random.Random(20251015)
picked = ["poverty", "cat", "the"] + rng.sample(sorted(words - {"poverty", "cat", "the"}), 197)
for w in picked:
    n = sum(1 for p in cmu[w][0] if p[-1].isdigit())
    print(f"{w}\t{n}")
