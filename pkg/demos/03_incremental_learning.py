"""
Single-pass, incremental training
=================================

Counts are the state; weights are derived from them on demand. Adding data
later gives exactly the model that training on everything at once would.
"""

import random

from itlex import CountStore, Network, SamplePair, merge_counts, train
from itlex.itnet import format_store

rng = random.Random(0)
inputs = [f"w{k}" for k in range(8)]
outputs = ["x", "y", "z"]
corpus = [SamplePair("vp", set(rng.sample(inputs, 3)), rng.choice(outputs)) for _ in range(40)]

first, later = corpus[:25], corpus[25:]
store = train(first, "vp")
print("after 25 samples:", Network(store).select({"w1", "w2"}))

# Update in place, one sample at a time...
for sample in later:
    store.add(sample)

# ...or train the new batch separately and add the counts.
merged = merge_counts(train(first, "vp"), train(later, "vp"))
full = train(corpus, "vp")
print("in-place == batch:", store == full)
print("merged   == batch:", merged == full)
print("identical files  :", format_store(merged) == format_store(full))
print("after 40 samples:", Network(full).select({"w1", "w2"}))

# Sample order does not matter either.
shuffled = list(corpus)
rng.shuffle(shuffled)
print("order-free:", train(shuffled, "vp") == full)

print(format_store(CountStore("vp")))
