"""Write the syllable table bundled with the core crate.

Usage: python3 scripts/gen_syllable_table.py > crates/core/data/syllables.txt

One `word count` line per alphabetic CMU Pronouncing Dictionary entry (first
pronunciation, vowel phones counted). Requires the `cmudict` pip package.
"""
import cmudict

HEADER = """# Syllable counts from the CMU Pronouncing Dictionary (first pronunciation).
# Copyright (C) 1993-2015 Carnegie Mellon University. All rights reserved.
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the conditions of the BSD
# 2-clause license are met; see http://www.speech.cs.cmu.edu/cgi-bin/cmudict."""

rows = []
for word, prons in cmudict.dict().items():
    if not word.replace("'", "").isalpha():
        continue
    rows.append(f"{word} {sum(1 for p in prons[0] if p[-1].isdigit())}")
print(HEADER)
print("\n".join(sorted(rows)))
