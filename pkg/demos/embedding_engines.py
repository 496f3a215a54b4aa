"""Embedding engines: build surjective maps one cycle at a time and audit them.

Run: python demos/embedding_engines.py
"""

from ramseylab import colorings as co
from ramseylab import embeddings as em
from ramseylab import zoo

print("bipartite Rado graph onto the blue class of the Rado coloring:")
pe = em.embed_zero_ruled(zoo.BipartiteRadoGraph(), (co.RadoColoring(), 1), 40)
for step, guest, host, rule in pe.rows()[:8]:
    print(f"  cycle {step}: guest {guest:>4} -> host {host:>4}  ({rule})")
rep = em.verify_embedding(pe)
print(f"  valid={rep.valid} monochromatic={rep.mono} covered host prefix={rep.coverage}")

print("\nresuming is the same as running longer:")
a = em.embed_zero_ruled(zoo.BipartiteRadoGraph(), (co.RadoColoring(), 1), 15)
b = em.embed_zero_ruled(zoo.BipartiteRadoGraph(), (co.RadoColoring(), 1), 25, resume=a)
print("  ", b.rows() == pe.rows()[:len(b.rows())])

print("\na tree with arms of every length, spanning the Rado graph:")
pe = em.embed_deep_tree(zoo.IncreasingStar(), zoo.RadoGraph(), 30)
rep = em.verify_embedding(pe)
print(f"  {len(pe.mapping)} guest vertices placed, covered host prefix={rep.coverage}")

print("\ncompatibility graph of the binary tree onto K(1, inf, inf, ...):")
pe = em.embed_compat_multipartite(zoo.compatibility_graph(zoo.TreeSpec("dary", 2)),
                                  zoo.multipartite_graph(zoo.MultipartiteSpec((1,), None)), 20)
print(f"  valid={em.verify_embedding(pe).valid} covered={em.verify_embedding(pe).coverage}")

print("\nan engine that cannot apply says so instead of guessing:")
try:
    em.embed_short_tree(zoo.InfinitePath(), zoo.CompleteGraph(), 1, 5)
except em.EmbeddingRefused as e:
    print("  refused:", e)
