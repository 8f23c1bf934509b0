"""Built-in scenarios shown by ``jkforge demo``."""

DEMOS = {
    "simplicial": """\
scenario simplicial
# faces and degeneracies of k^{Delta^n} compose like the maps they pull back along
let S2 = simplex k 2
let S1 = simplex k 1
let d0 = face S1 0
let v1 = vertex S1 1
assert simplicial_identities k 2
assert hom d0
assert equal d0 v1
let D2 = delta 2
let sd2 = sd D2
assert top_count sd2 6
assert euler sd2 1
""",
    "classifying-maps": """\
scenario classifying-maps
# two sections of the loop extension give different classifying maps joined by H
let E = loop_ext k
let beta = loop_section k 1
let gamma = loop_section k 2
let xb = classifying E beta
let xg = classifying E gamma
let H = H E beta gamma
let h0 = endpoint H 0
let h1 = endpoint H 1
assert hom xb
assert differ xb xg
assert equal h0 xb
assert equal h1 xg
assert homotopic xb xg H
""",
    "exactness": """\
scenario exactness
# the universal and loop extensions are exact and split
let U = universal k
let L = loop_ext k
let Jk = J k
assert extension U
assert exact_sequence U
assert extension L
assert exact_sequence L
assert ranks Jk 0 1 2 3
""",
    "power-tensor": """\
scenario power-tensor
# tensor algebras contract to zero and J is functorial
let sq = square_zero 1
let T = tensor sq
let c = contract_TA sq
let z = endpoint c 0
let i = endpoint c 1
let idT = id T
let cm = homotopy_map c
assert hom cm
assert equal i idT
assert zero z
""",
    "hauptlemma": """\
scenario hauptlemma
# adjacent faces of k^{Delta^2} are joined by an explicit chain of elementary homotopies
let d0 = face_restriction k 1 0
let d1 = face_restriction k 1 1
let d2 = face_restriction k 1 2
let c01 = simplex_face_chain k 1 0 1
let c02 = simplex_face_chain k 1 0 2
let c21 = simplex_face_chain k 1 2 1
assert homotopic d0 d1 c01
assert homotopic d0 d2 c02
assert homotopic d2 d1 c21
assert links c01 1
assert differ d0 d1
let s1 = simplex_face_chain k 0 0 1 m=1
let e0 = face_restriction k 0 0 m=1
let e1 = face_restriction k 0 1 m=1
assert homotopic e0 e1 s1
# phi(i, j) starts at the i-th face and ends at the j-th
let S = simplex k 2
let p02 = phi k 1 0 2
let f0 = face S 0
let f2 = face S 2
assert homotopic f0 f2 p02
# the square: d_0 ~ d_1 through two prism moves
let sq = cube_face_chain k 1
let top = cube_end k 1 1
let bottom = cube_end k 1 0
assert links sq 2
assert homotopic top bottom sq
# straightening the contraction of a square-zero algebra into a cube-shaped homotopy
let A = square_zero 2
let c = contract_squarezero A
let z = endpoint c 0
let i = endpoint c 1
let C = correct z i c A 0
let g = part C g
let H = part C H
let e_top = part C d0
let e_bottom = part C d1
let left = compose e_top H
let right = compose e_bottom H
let zg = compose z g
let ig = compose i g
assert hom H
assert equal left zg
assert equal right ig
""",
    "excision": """\
scenario excision
cap 6
# the mapping path of the loop extension of k satisfies its structural identities
let E = loop_ext k
let M = mapping_path E
assert excision M
""",
    "stabilization": """\
scenario stabilization
# corner embeddings and stable bonds are homomorphisms
let sq = square_zero 1
let M2 = matrix sq 2
let c = corner sq 2 3
let s = stabilize sq
let b = stable_bond sq 1
assert matrix_units M2
assert hom c
assert hom s
assert hom b
""",
    "loop-iteration": """\
scenario loop-iteration
cap 8
# sigma iterated on the identity lands in the loop objects and vanishes on the cube boundary
let one1 = one_nk k 1
let one2 = one_nk k 2
let r1 = boundary_restriction k 1
let r2 = boundary_restriction k 2
let b1 = compose r1 one1
let b2 = compose r2 one2
assert hom one1
assert hom one2
assert zero b1
assert zero b2
""",
}
