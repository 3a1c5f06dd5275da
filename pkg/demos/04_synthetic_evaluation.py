"""
Structure-dependent lexical choice on synthetic data
====================================================

In the synthetic corpora the target head depends on the verb together with
the class of its object, so the verb alone is ambiguous. The word-level
baseline, which looks only at the source head, cannot resolve this; the
network, which sees the heads of the sub-structures too, can.
"""

from itlex import (
    Network,
    SyntheticSpec,
    baseline_train,
    evaluate,
    evaluate_baseline,
    gen_synthetic,
    head_pairs,
    samples_from_corpus,
    train_by_category,
)

corpus = gen_synthetic(SyntheticSpec(seed=0))
for src, tgt in corpus.train[:3]:
    print(src, "->", tgt)


def score(corpus):
    cmap = corpus.category_map
    nets = {c: Network(s) for c, s in train_by_category(samples_from_corpus(corpus.train, cmap)).items()}
    network = evaluate(nets, corpus.test, cmap)
    baseline = evaluate_baseline(baseline_train(head_pairs(corpus.train)), corpus.test, cmap)
    return network, baseline


network, baseline = score(corpus)
print(network.table())
print("baseline accuracy:", round(baseline.overall.accuracy, 4))

###############################################################################
# With label noise the best achievable accuracy is the Bayes rate of the
# generator; the network stays close to it.
print(f"{'noise':>6} {'network':>8} {'baseline':>9} {'bayes':>6}")
for noise in (0.0, 0.1, 0.2, 0.3, 0.5):
    corpus = gen_synthetic(SyntheticSpec(noise=noise, n_test=1000, seed=0))
    network, baseline = score(corpus)
    print(f"{noise:6.1f} {network.overall.accuracy:8.3f} {baseline.overall.accuracy:9.3f} {corpus.bayes_rate:6.3f}")
