"""Freeze a 1,000-token POS gold fixture from the OANC sample shipped with pattern3.

Usage: python3 scripts/gen_tagger_gold.py /path/to/tagged-en-oanc.txt > crates/core/tests/fixtures/tagger_gold.tsv

Output: one token per line, `form<TAB>penn<TAB>upos`; blank line between sentences.
"""
import sys

BE = {"be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "ai"}
HAVE = {"have", "has", "had", "having", "'ve"}
DO = {"do", "does", "did", "doing"}
SCONJ = {"although", "because", "if", "though", "unless", "whereas", "whether", "while", "that", "cos", "cuz"}
PUNCT_TAGS = {".", ",", ":", "``", "''", "-LRB-", "-RRB-", "(", ")", '"', "HYPH", "NFP"}


def to_upos(sent, i):
    form, tag = sent[i]
    low = form.lower().replace("’", "'")
    nxt = [t for _, t in sent[i + 1 : i + 4]]
    if tag == "MD":
        return "AUX"
    if tag.startswith("VB"):
        if low in BE or (low == "'s" and tag == "VBZ"):
            return "AUX"
        if low in HAVE or (low == "'d" and tag == "VBD"):
            return "AUX" if "VBN" in nxt else "VERB"
        if low in DO:
            return "AUX" if "VB" in nxt else "VERB"
        return "VERB"
    if tag == "IN":
        return "SCONJ" if low in SCONJ else "ADP"
    if tag == "RB":
        return "PART" if low in ("not", "n't") else "ADV"
    table = {
        "RBR": "ADV", "RBS": "ADV", "WRB": "ADV", "RP": "ADP", "TO": "PART", "POS": "PART",
        "DT": "DET", "PDT": "DET", "WDT": "PRON", "PRP": "PRON", "PRP$": "PRON", "WP": "PRON",
        "WP$": "PRON", "EX": "PRON", "CC": "CCONJ", "CD": "NUM", "UH": "INTJ", "JJ": "ADJ",
        "JJR": "ADJ", "JJS": "ADJ", "NN": "NOUN", "NNS": "NOUN", "NNP": "PROPN", "NNPS": "PROPN",
        "FW": "X", "LS": "X", "SYM": "SYM", "$": "SYM", "#": "SYM",
    }
    if tag in table:
        return table[tag]
    return "PUNCT"


def main():
    lines = open(sys.argv[1], encoding="utf-8").read().splitlines()
    out, total = [], 0
    # skip the head of the file, which has already been looked at while developing
    for line in lines[5000:]:
        sent = [tuple(t.rsplit("/", 1)) for t in line.split()]
        if not sent:
            continue
        for i, (form, tag) in enumerate(sent):
            out.append(f"{form}\t{tag}\t{to_upos(sent, i)}")
        out.append("")
        total += len(sent)
        if total >= 1000:
            break
    sys.stdout.write("\n".join(out))


main()
