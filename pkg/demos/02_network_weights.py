"""
Weights, biases and activation
==============================

A three-sample corpus is enough to see how the network scores outputs.
"""

import math

from itlex import Network, SamplePair, posterior_oracle, train

corpus = [
    SamplePair("vp", {"eat", "apple"}, "essen"),
    SamplePair("vp", {"eat", "bread"}, "essen"),
    SamplePair("vp", {"drink", "water"}, "trinken"),
]

###############################################################################
# Without smoothing the weights are plain PMI on relative frequencies:
# eat occurs in 2/3 of the samples, essen is the output of 2/3, and they
# co-occur in 2/3, so the weight is ln((2/3) / (2/3 * 2/3)) = ln 1.5.
exact = Network(train(corpus, "vp", lam=0.0))
print("w(eat, essen) =", exact.weight("eat", "essen"), " ln 1.5 =", math.log(1.5))
print("b(essen)      =", exact.bias("essen"), " ln 2/3 =", math.log(2 / 3))
print("w(drink, essen) =", exact.weight("drink", "essen"))

###############################################################################
# Add-lambda smoothing keeps every weight finite. Selection uses lambda > 0.
net = Network(train(corpus, "vp", lam=0.5))
print(net.weights.round(3))
print("in :", net.in_vocab)
print("out:", net.out_vocab)

act = net.activate({"drink", "water", "nobody"})
print("ranking:", act.ranking())
print("unknown:", act.unknown_inputs)
print("selected:", net.select({"drink", "water"}))

###############################################################################
# The activation is the naive-Bayes log posterior up to a constant, so a
# softmax over the scores reproduces the posterior computed from counts.
scores = act.scores
z = sum(math.exp(v) for v in scores.values())
print({j: round(math.exp(v) / z, 6) for j, v in scores.items()})
print({j: round(p, 6) for j, p in posterior_oracle(net.store, {"drink", "water"}).items()})
