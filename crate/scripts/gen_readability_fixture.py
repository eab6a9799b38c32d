"""Freeze the readability oracle fixture from textstat 0.7.13.

Usage: python3 scripts/gen_readability_fixture.py > crates/core/tests/fixtures/readability_textstat.json

For each text we record the counts textstat itself derived (words, sentences, syllables,
characters, letters, difficult words, Linsear Write sample counts) and the seven scores it
reports with rounding disabled. The Rust side feeds the pinned counts into its formulas.
Requires the `cmudict` pip package (textstat's nltk download path is patched out).
"""
import json

import cmudict
import textstat.backend.counts._count_syllables as cs

_CMU = cmudict.dict()
cs.get_cmudict = lambda lang: _CMU

import textstat  # noqa: E402
from textstat.backend.counts import (  # noqa: E402
    _count_chars, _count_difficult_words, _count_letters, _count_sentences, _count_words,
)
from textstat.backend.counts._count_syllables import count_syllables  # noqa: E402
from textstat.backend.selections._list_words import list_words  # noqa: E402
from textstat.backend.transformations._remove_punctuation import remove_punctuation  # noqa: E402

textstat.set_rounding_points(None)
LANG = "en"

TEXTS = [
    "The cat sat on the mat.",
    "I can't afford groceries this week. My landlord raised the rent again and I have no idea how we will manage.",
    "We finally got out on the water this weekend. The breeze was perfect and the boat handled beautifully through every tack.",
    "Honestly the food bank saved us last month. They had fresh vegetables, canned beans, rice and even some bread for the kids.",
    "My swing has improved considerably since I started working with a new instructor. Consistency off the tee remains the primary challenge.",
    "Does anyone know a cheap way to fix a leaking faucet? I really don't want to call a plumber because they charge a fortune.",
    "The orchestra delivered an extraordinarily nuanced interpretation of the symphony, emphasizing the contrapuntal passages with remarkable clarity.",
    "Paycheck to paycheck again. Bills keep piling up and the car needs new tires before winter.",
    "I bought these shoes at a thrift store for five dollars. They look almost new and they fit great.",
    "Our philanthropic foundation prioritizes educational initiatives, particularly scholarships for first-generation university students pursuing engineering degrees.",
    "Just got my first paycheck from the new job. It is not much but it is something. Feeling hopeful for once.",
    "Fencing requires tremendous concentration, anticipation, and agility. Each bout becomes a rapid conversation of feints and parries.",
    "Save money by cooking beans from dry instead of buying cans. One pound makes about six servings and costs very little.",
    "The horse refused the third fence twice. Eventually my trainer suggested approaching it at a slower canter with more leg.",
    "I lost my job in March and the unemployment checks barely cover rent. Every single day I apply for more positions online.",
    "Literature offers an irreplaceable window into the inner lives of others. Reading widely cultivates empathy, imagination, and intellectual humility.",
    "Went to the store. Bought rice. Came home. Made dinner for everybody with what was left.",
    "If you want to save on groceries, plan your meals ahead, shop with a list, and avoid going when you are hungry.",
    "The regatta was postponed due to unfavorable conditions, although several experienced crews insisted on sailing regardless of the forecast.",
    "We were evicted last year and stayed with my sister for a while. Things are better now but I still worry about money all the time.",
]


def linsear_counts(text):
    text_list = list_words(text, rm_punctuation=False)
    words_list, i_text = [], 0
    if len(text_list) > 100:
        while i_text < len(text_list) and len(words_list) < 100:
            word = remove_punctuation(text_list[i_text], rm_apostrophe=False)
            i_text += 1
            if word:
                words_list.append(word)
    else:
        words_list = list_words(text, rm_punctuation=True)
        i_text = len(text_list)
    easy = hard = 0
    for word in words_list:
        n = count_syllables(word, LANG)
        if n >= 3:
            hard += 1
        elif n > 0:
            easy += 1
    sample = " ".join(text_list[:i_text])
    return easy, hard, _count_sentences.count_sentences(sample)


rows = []
for text in TEXTS:
    words = _count_words.count_words(text)
    assert words == _count_words.count_words(text, rm_punctuation=False), text
    easy, hard, lw_sentences = linsear_counts(text)
    rows.append({
        "text": text,
        "counts": {
            "words": words,
            "sentences": _count_sentences.count_sentences(text),
            "syllables": count_syllables(text, LANG),
            "characters": _count_chars.count_chars(text, ignore_spaces=True),
            "letters": _count_letters.count_letters(text),
            "dale_chall_difficult": _count_difficult_words.count_difficult_words(text, LANG, 0),
            "fog_complex": _count_difficult_words.count_difficult_words(text, LANG, 3),
            "linsear_easy": easy,
            "linsear_hard": hard,
            "linsear_sentences": lw_sentences,
        },
        "scores": {
            "ari": textstat.automated_readability_index(text),
            "coleman_liau": textstat.coleman_liau_index(text),
            "dale_chall": textstat.dale_chall_readability_score(text),
            "flesch_kincaid": textstat.flesch_kincaid_grade(text),
            "flesch_reading_ease": textstat.flesch_reading_ease(text),
            "gunning_fog": textstat.gunning_fog(text),
            "linsear": textstat.linsear_write_formula(text),
        },
    })

print(json.dumps({"source": "textstat 0.7.13 (rounding disabled, CMUdict + pyphen syllables)", "texts": rows}, indent=1))
