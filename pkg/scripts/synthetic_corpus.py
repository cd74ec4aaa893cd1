"""Write a vertical-format corpus of roughly N tokens for smoke tests.

    python scripts/synthetic_corpus.py 1000000 /tmp/synthetic.vert --seed 7

Documents draw background words from a Zipf-like vocabulary; two thirds of
them carry a positive or negative seed and a few class-typical words so
distant labelling has something to find.
"""
import argparse

import numpy as np

POSITIVE = ["gut", "toll", "super", "prima", "klasse"]
NEGATIVE = ["schlecht", "mies", "furchtbar", "übel", "grausam"]


def generate(n_tokens: int, path: str, seed: int = 0, vocabulary_size: int = 5000, doc_length: int = 20):
    rng = np.random.default_rng(seed)
    vocabulary = np.array([f"w{i}" for i in range(vocabulary_size)])
    weights = 1.0 / np.arange(1, vocabulary_size + 1)
    weights /= weights.sum()

    written = 0
    doc_id = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        while written < n_tokens:
            length = int(min(max(3, rng.poisson(doc_length)), n_tokens - written))
            words = list(rng.choice(vocabulary, size=length, p=weights))
            kind = rng.integers(3)
            if kind < 2 and length >= 3:
                pool = POSITIVE if kind == 0 else NEGATIVE
                words[0] = pool[0]
                for position in rng.choice(np.arange(1, length), size=min(2, length - 1), replace=False):
                    words[position] = pool[rng.integers(1, len(pool))]
            f.write(f"#doc d{doc_id}\n")
            f.writelines(f"{word}\t{word}\n" for word in words)
            f.write("\n")
            written += length
            doc_id += 1
    return written, doc_id


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("tokens", type=int)
    parser.add_argument("output")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--vocabulary", type=int, default=5000)
    args = parser.parse_args()
    tokens, documents = generate(args.tokens, args.output, seed=args.seed, vocabulary_size=args.vocabulary)
    print(f"Wrote {documents} documents, {tokens} tokens to {args.output}")


if __name__ == "__main__":
    main()
