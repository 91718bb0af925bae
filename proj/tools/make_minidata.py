#!/usr/bin/env python3
"""Generate the bundled synthetic mini-dataset used by the end-to-end tests.

Every word carries a latent difficulty. Lexicon values, corpus frequency and
gold complexity are all noisy functions of it, so the pipeline has a planted
signal to recover. Output is deterministic for a given --seed.
"""
import argparse
import json
import math
import os
import random

CORPORA = ["bible", "biomed", "europarl"]
CORPUS_OFFSET = {"bible": 0.03, "biomed": 0.08, "europarl": 0.0}
ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "tr", "pl"]
VOWELS = ["a", "e", "i", "o", "u", "ai", "ou"]
CODAS = ["", "", "n", "r", "s", "l", "m"]


def make_vocab(rng, size):
    words = set()
    while len(words) < size:
        syl = rng.randint(1, 3)
        w = "".join(rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS) for _ in range(syl))
        if not w.endswith("s"):
            words.add(w)
    words = sorted(words)
    rng.shuffle(words)
    return words


def sentence_text(tokens, rng):
    out = []
    for i, t in enumerate(tokens):
        if i == 0:
            t = t.capitalize()
        if i > 0 and i < len(tokens) - 1 and rng.random() < 0.06:
            t = t + ","
        out.append(t)
    return " ".join(out) + rng.choice([".", ".", ".", "!", "?"])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=20210801)
    ap.add_argument("--vocab", type=int, default=400)
    ap.add_argument("--sentences", type=int, default=4000)
    ap.add_argument("--instances", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)

    vocab = make_vocab(rng, args.vocab)
    difficulty = {w: rng.random() for w in vocab}
    weight = [math.exp(-4.0 * difficulty[w]) for w in vocab]

    # Collocations: adjacent pairs planted in the corpus with a known strength.
    pairs = []
    seen = set()
    while len(pairs) < 90:
        a, b = rng.sample(vocab, 2)
        if (a, b) in seen:
            continue
        seen.add((a, b))
        pairs.append((a, b, rng.random()))

    def sample_words(k):
        return rng.choices(vocab, weights=weight, k=k)

    with open(os.path.join(args.out, "corpus.txt"), "w") as f:
        for _ in range(args.sentences):
            toks = sample_words(rng.randint(6, 18))
            a, b, s = rng.choice(pairs)
            if rng.random() < 0.15 + 0.8 * s:
                pos = rng.randint(0, len(toks) - 1)
                toks[pos:pos] = [a, b]
            f.write(sentence_text(toks, rng) + "\n")

    # Frequency list: per-million frequency with multiplicative noise, 85% coverage.
    total_w = sum(weight)
    with open(os.path.join(args.out, "freq_list.tsv"), "w") as f:
        f.write("word\tfreq_per_million\n")
        for w, wt in zip(vocab, weight):
            if rng.random() < 0.85:
                f.write(f"{w}\t{1e6 * wt / total_w * math.exp(rng.gauss(0, 0.3)):.4f}\n")
    # Norms: age of acquisition and familiarity track difficulty; concreteness is noise.
    with open(os.path.join(args.out, "norms.tsv"), "w") as f:
        f.write("word\taoa\tfamiliarity\tconcreteness\n")
        for w in vocab:
            if rng.random() < 0.7:
                d = difficulty[w]
                f.write(f"{w.upper() if rng.random() < 0.1 else w}\t{3 + 10 * d + rng.gauss(0, 1):.3f}\t"
                        f"{6 - 4 * d + rng.gauss(0, 0.7):.3f}\t{rng.uniform(1, 5):.3f}\n")
    # Psychometric: lexical decision latency and accuracy, with a few unparsable cells.
    with open(os.path.join(args.out, "psych.tsv"), "w") as f:
        f.write("word\trt\taccuracy\n")
        for w in vocab:
            if rng.random() < 0.75:
                d = difficulty[w]
                rt = f"{550 + 250 * d + rng.gauss(0, 40):.1f}" if rng.random() > 0.02 else "NULL"
                f.write(f"{w}\t{rt}\t{min(1.0, 0.98 - 0.2 * d + rng.gauss(0, 0.03)):.3f}\n")

    # Plural surface forms resolve through the lemma dictionary.
    plural = {w: w + "s" for w in vocab if rng.random() < 0.3}
    with open(os.path.join(args.out, "lemmas.tsv"), "w") as f:
        f.write("surface\tlemma\n")
        for w in vocab:
            if w in plural:
                f.write(f"{plural[w]}\t{w}\n")

    def surface(w):
        return plural[w] if w in plural and rng.random() < 0.3 else w

    def context(targets):
        toks = sample_words(rng.randint(5, 30))
        pos = rng.randint(0, len(toks))
        toks[pos:pos] = targets
        return sentence_text(toks, rng)

    def clip(x):
        return min(1.0, max(0.0, x))

    single_pool = rng.sample(vocab, 130)
    with open(os.path.join(args.out, "single.tsv"), "w") as f:
        f.write("id\tcorpus\tsentence\ttoken\tcomplexity\n")
        for i in range(args.instances):
            w = rng.choice(single_pool)
            c = rng.choice(CORPORA)
            s = surface(w)
            gold = clip(0.1 + 0.55 * difficulty[w] + CORPUS_OFFSET[c] + rng.gauss(0, 0.05))
            f.write(f"s{i:04d}\t{c}\t{context([s])}\t{s}\t{gold:.6f}\n")

    def write_multi(path, pool, count, prefix):
        with open(path, "w") as f:
            f.write("id\tcorpus\tsentence\ttoken\tcomplexity\n")
            for i in range(count):
                a, b, s = rng.choice(pool)
                c = rng.choice(CORPORA)
                da, db = difficulty[a], difficulty[b]
                gold = clip(0.12 + 0.35 * max(da, db) + 0.15 * min(da, db) - 0.12 * s
                            + CORPUS_OFFSET[c] + rng.gauss(0, 0.04))
                f.write(f"{prefix}{i:04d}\t{c}\t{context([a, b])}\t{a} {b}\t{gold:.6f}\n")

    write_multi(os.path.join(args.out, "multi.tsv"), pairs[:70], args.instances, "m")
    write_multi(os.path.join(args.out, "multi_test.tsv"), pairs[70:], 60, "t")

    manifest = {
        "tables": [
            {"name": "freq_list", "group": "frequency", "path": "freq_list.tsv", "key_column": 0, "value_column": 1},
            {"name": "corpus_freq", "group": "frequency", "path": "ref.unigrams.tsv", "key_column": 0, "value_column": 1},
            {"name": "aoa", "group": "norm", "path": "norms.tsv", "key_column": 0, "value_column": 1},
            {"name": "familiarity", "group": "norm", "path": "norms.tsv", "key_column": 0, "value_column": 2},
            {"name": "concreteness", "group": "norm", "path": "norms.tsv", "key_column": 0, "value_column": 3},
            {"name": "ld_rt", "group": "psychometric", "path": "psych.tsv", "key_column": 0, "value_column": 1},
            {"name": "ld_acc", "group": "psychometric", "path": "psych.tsv", "key_column": 0, "value_column": 2},
        ],
        "lemmas": "lemmas.tsv",
        "frequency_models": [{"name": "ref", "prefix": "ref"}],
    }
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    for task in ("single", "multi"):
        with open(os.path.join(args.out, f"schema_{task}.json"), "w") as f:
            json.dump({"task": task, "manifest": "manifest.json",
                       "groups": ["length", "corpus_id", "frequency", "norm", "psychometric", "association"],
                       "score_interval": [0.0, 1.0]}, f, indent=2)
            f.write("\n")
    params = {"num_iterations": 4800, "learning_rate": 0.0035, "num_leaves": 11, "max_depth": 7,
              "min_data_in_leaf": 7, "lambda_l2": 0.0175, "bagging_freq": 5, "bagging_fraction": 0.66,
              "feature_fraction": 0.09, "max_bin": 64, "min_data_in_bin": 10, "seed": 42}
    with open(os.path.join(args.out, "params.json"), "w") as f:
        json.dump(params, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
