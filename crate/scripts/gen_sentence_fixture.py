"""Freeze a 50-sentence segmentation fixture using pysbd (Pragmatic Segmenter port).

Usage: python3 scripts/gen_sentence_fixture.py > crates/core/tests/fixtures/sentences_pysbd.json
"""
import json

import pysbd

TEXTS = [
    "Mr. Smith left.",
    "I went to the store. It was closed! Why would they close at noon? Nobody knows.",
    "Dr. Jones said the test was fine. Mrs. Brown disagreed. She wanted a second opinion.",
    "We paid $5.50 for lunch. That is a lot for us. Next week we cook at home.",
    "He said \"stop it.\" Then he walked away. I did not follow him.",
    "The meeting is at 3 p.m. tomorrow. Please bring the budget. Don't be late!",
    "My sister works for Acme Inc. in Ohio. She likes it there. The pay is decent.",
    "Wait... what happened? I was gone for five minutes. Now the kitchen is flooded.",
    "Golf is expensive (clubs, fees, lessons). Still, I love it. Every Sunday I play eighteen holes.",
    "J. R. R. Tolkien wrote many books. My favorite is The Hobbit. I read it every year.",
    "Is it worth it? Yes. Absolutely. We saved almost two hundred dollars last month.",
    "The U.S. economy grew last year. Prices still went up. Wages did not keep pace.",
    "I asked for help e.g. food or rent money. They said no. I tried again vs. another office.",
    "Thanks so much! You really helped us out. We will pay it forward.",
    "Prof. Adams teaches on Mondays. St. Louis is far. I drove there anyway. It took six hours.",
    "Rent is due. Food is low. The car broke down! What else can go wrong?",
]

seg = pysbd.Segmenter(language="en", clean=False)
rows = [{"text": t, "sentences": [s.strip() for s in seg.segment(t)]} for t in TEXTS]
print(json.dumps({"source": "pysbd", "texts": rows}, indent=1))
print(sum(len(r["sentences"]) for r in rows), file=__import__("sys").stderr)
