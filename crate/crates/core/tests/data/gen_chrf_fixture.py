"""Regenerates chrf_pairs.tsv with sacrebleu (tested with 2.6.0).

Each line: hypothesis <TAB> reference <TAB> sentence chrF2++.
The last line is: #corpus <TAB> corpus chrF2++ over all pairs.
"""
import random
import sys

from sacrebleu.metrics import CHRF

WORDS = (
    "the a cat dog sat on mat it depends situation really honestly for me "
    "we went to class yesterday and talked about the project deadline , . ! ? "
    "(ok) \"yes\" don't it's 2024 10:30 e-mail co-op "
    "بصراحة بالنسبالي ع ال انا عملت check ها الكتب مصطفي كويس جدا يعني"
).split()


def sentence(rng):
    return " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 12)))


def perturb(rng, s):
    words = s.split()
    for _ in range(rng.randint(0, 3)):
        op = rng.random()
        if op < 0.3 and words:
            words[rng.randrange(len(words))] = rng.choice(WORDS)
        elif op < 0.5 and len(words) > 1:
            del words[rng.randrange(len(words))]
        elif op < 0.7:
            words.insert(rng.randrange(len(words) + 1), rng.choice(WORDS))
        elif words:
            i = rng.randrange(len(words))
            w = words[i]
            if len(w) > 1:
                j = rng.randrange(len(w))
                words[i] = w[:j] + w[j + 1:]
    return " ".join(words) if words else rng.choice(WORDS)


def main(out):
    rng = random.Random(20240)
    chrf = CHRF(word_order=2)
    hyps, refs = [], []
    for _ in range(50):
        ref = sentence(rng)
        hyp = perturb(rng, ref) if rng.random() < 0.85 else sentence(rng)
        hyps.append(hyp)
        refs.append(ref)
    with open(out, "w", encoding="utf-8") as f:
        for h, r in zip(hyps, refs):
            f.write(f"{h}\t{r}\t{chrf.sentence_score(h, [r]).score!r}\n")
        f.write(f"#corpus\t{chrf.corpus_score(hyps, [refs]).score!r}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "chrf_pairs.tsv")
