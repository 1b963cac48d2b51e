"""Cross-check a few seeded random tag systems against their networks."""
import sys

from anepfc.harness import GeneratorSpec, equivalence_check, random_tag_system, word_corpus

seeds = [int(s) for s in sys.argv[1:]] or [0, 3, 4]
for seed in seeds:
    t = random_tag_system(GeneratorSpec(seed, n=2 + seed % 2))
    corpus = word_corpus(t, 3)
    rep = equivalence_check(t, corpus)
    print(f"seed {seed}: {t.productions}")
    print(f"  {len(corpus)} words: {rep.summary}")
    for word, time in sorted(rep.golden.items(), key=lambda kv: kv[1])[:3]:
        print(f"  {word!r} accepted at step {time}")
