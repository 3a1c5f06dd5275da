"""
From f-structure pairs to training samples
==========================================

Parse the English/German registration pair, align it slot by slot, and cut
it into the associations each category's network learns from.
"""

from itlex import DEFAULT_CATEGORY_MAP, align, extract_samples, head_of, parse, serialize

english = parse("""
[sentence [subj I] would
  [xcomp [subj I] like
    [xcomp [subj I] register [pp-adj for the conference]]]]
""")
german = parse("""
[sentence [subj Ich] werde
  [xcomp [subj Ich] [adj gerne]
    [xcomp [subj Ich] anmelden [pp-adj fuer der Konferenz]]]]
""")

# Canonical form: lowercase, one space between items.
print(serialize(english))
print(serialize(german))

# The head of a structure is the last bare token at its own level.
print(head_of(parse("[pp-adj for the conference]")))

###############################################################################
# Children are paired by slot label, repeated labels in order of occurrence.
pairs, diag = align(english, german)
for src, tgt in pairs:
    print(f"{src.label:8s} {serialize(src)[:50]:52s} <-> {serialize(tgt)[:40]}")
print("unmatched sub-structures:", diag.skipped)

###############################################################################
# Each aligned pair whose target has a head gives one sample: the source head
# plus the heads of its immediate sub-structures, mapped to the target head.
for sample in extract_samples(pairs, DEFAULT_CATEGORY_MAP):
    print(f"{sample.category:3s} {sorted(sample.inputs)} -> {sample.output}")
