"""Counting Fourier-Mukai partners of K3 surfaces of Picard rank one."""

from latticefm import (
    discriminant_form,
    fm_count_rank_one,
    l2d,
    oguiso_count,
    orthogonal_group,
    prime_count,
    stable_covering_degree,
)

print(" d  p(d)  |O(D)|  orbits  formula  covering degree")
for d in (1, 2, 6, 7, 12, 30, 210):
    q = discriminant_form(l2d(d)).form
    print(f"{d:3d}  {prime_count(d):3d}  {len(orthogonal_group(q)):6d}  {fm_count_rank_one(d):6d}"
          f"  {oguiso_count(d):7d}  {stable_covering_degree(d):6d}")
