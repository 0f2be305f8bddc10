//! Verbatim source quotes cited by verdict reasons, fixtures and reports.
//!
//! Each anchor is an id plus a LaTeX fragment copied exactly from the source
//! text. The test suite checks every fragment against `paper.md`.

pub struct Anchor {
    pub id: &'static str,
    pub quote: &'static str,
}

pub const ANCHORS: &[Anchor] = &[
    // Chow stability of (2,3) complete intersections
    Anchor {
        id: "chow.stable",
        quote: r"$C$ has at worst $A_4$-singularities at smooth points of $Q$, and at worst $A_2$-singularities at the vertex of $Q$ if $\rank Q = 3$",
    },
    Anchor {
        id: "chow.semistable",
        quote: r"is a quadric surface with $\rank Q \ge 2$, and, if $C$ is reduced, $Q$ is uniquely determined",
    },
    Anchor {
        id: "chow.rank4",
        quote: r"if $\rank Q = 4$, then either (a) $C$ contains a singularity of type $D_4$ or $A_5$, or (b) $C$ does not contain an irreducible component of degree $\le 2$ and contains a singularity of type $A_k$, $k \ge 6$.",
    },
    Anchor {
        id: "chow.rank3",
        quote: r"if $\rank Q = 3$, then $C$ has at worst an $A_k$ singularity at the vertex of $Q$ and either (a) $C$ contains a $D_4$ or $A_5$ singularity at a smooth point of $Q$ or an $A_3$ singularity at the vertex of $Q$, or (b) $C$ does not contain an irreducible component of degree $1$ and contains a singularity of type $A_k$, $k \ge 6$ at a smooth point of $Q$ or of type $A_k$, $k \ge 4$ at the vertex of $Q$.",
    },
    Anchor {
        id: "chow.rank2",
        quote: r"if $\rank Q = 2$, then $C$ meets the singular locus of $Q$ in 3 distinct points.",
    },
    Anchor {
        id: "chow.ribbon",
        quote: r"If $C$ is not reduced, then $C$ is a genus $4$ ribbon.",
    },
    Anchor {
        id: "chow.polystable",
        quote: r"precisely the union of two isolated points $C_{2A_5}$, $C_{D}$ and a disjoint rational curve $\Gamma$ parameterizing $C_{A,B}$",
    },
    Anchor {
        id: "chow.ribbon_point",
        quote: r"which contains a unique point representing the cycle of a ribbon",
    },
    Anchor {
        id: "vgit.last",
        quote: r"that are not ribbons, elliptic triboroughs, or curves on a quadric cone with a tacnode (an $A_3$ singularity) at the vertex of the cone",
    },
    Anchor {
        id: "vgit.last_semistable",
        quote: r"are precisely the Chow (semi-)stable",
    },
    // named curves
    Anchor {
        id: "curve.c2a5",
        quote: r"$C_{2A_5}$ has two separating $A_5$-singularities",
    },
    Anchor {
        id: "curve.c2a5_equation",
        quote: r"$V(x_0x_3 - x_1x_2, x_0x_2^2 + x_1^2 x_3) \subset \mathbb{P}^3$",
    },
    Anchor {
        id: "curve.cd",
        quote: r"$C_D$ has two $D_4$-singularities and three $A_1$-singularities",
    },
    Anchor {
        id: "curve.cd_equation",
        quote: r"$V(x_0x_3, x_1^3 + x_2^3) \subset \mathbb{P}^2_{x_0} \cup \mathbb{P}^2_{x_3}$",
    },
    Anchor {
        id: "curve.cab",
        quote: r"these curves have an $A_5$ singularity at a smooth point of the quadric surface and an $A_3$ singularity at the cone point",
    },
    Anchor {
        id: "curve.cab_node",
        quote: r"If $4A/B^2 = 0$, there is an additional $A_1$ singularity at a smooth point of the quadric surface",
    },
    Anchor {
        id: "curve.cab_ribbon",
        quote: r"If $4A/B^2 = 1$, this curve is a canonical ribbon of genus four",
    },
    Anchor {
        id: "curve.two_a4",
        quote: r"irreducible curve with two $A_4$-singularities",
    },
    Anchor {
        id: "vertex.a3",
        quote: r"has an $A_5$-singularity at the origin",
    },
    Anchor {
        id: "vertex.a4",
        quote: r"has an $A_7$-singularity at the origin",
    },
    // hyperelliptic curves
    Anchor {
        id: "binary.git",
        quote: r"the binary form $f$ is non-zero and GIT (poly/semi)stable",
    },
    Anchor {
        id: "binary.polystable",
        quote: r"strictly GIT polystable hyperelliptic curve $(x_2^2 = x_0^5 x_1^5)",
    },
    Anchor {
        id: "s2a5.filter",
        quote: r"has at worst $A_4$-singularities if and only if $a, b_0, b_1,b_2,b_3$ are not all zero",
    },
    Anchor {
        id: "s2a5.equation",
        quote: r"(x_2^2 - x_0^3 x_2 + ax_0x_1^2 x_2 + b_0x_1^6 + b_1 x_0 x_1^5 +b_2 x_0^2 x_1^4 + b_3 x_0^3 x_1^3 = 0)\subset \mathbb{P}(1,1,3)",
    },
    // alpha-stable curves
    Anchor {
        id: "alpha.ample",
        quote: r"proper reduced Gorenstein  curves $C$ of arithmetic genus $g \ge 4$ with $\omega_C$ ample",
    },
    Anchor {
        id: "alpha.tail",
        quote: r"an \emph{elliptic tail} is a connected genus $1$ component of a stable curve meeting the rest of the curve at a single point",
    },
    Anchor {
        id: "alpha.c1",
        quote: r"For $\alpha \in (\frac{9}{11}, 1]$: $C$ has only $A_1$ singularities.",
    },
    Anchor {
        id: "alpha.w1",
        quote: r"For $\alpha = \frac{9}{11}$: $C$ has only $A_1, A_2$ singularities.",
    },
    Anchor {
        id: "alpha.c2",
        quote: r"For $\alpha \in (\frac{7}{10}, \frac{9}{11})$: $C$ has only $A_1$ and $A_2$ singularities, and does not contain $A_1$-attached elliptic tails.",
    },
    Anchor {
        id: "alpha.w2",
        quote: r"For $\alpha = \frac{7}{10}$: $C$ has only $A_{\leq 3}$ singularities, and does not contain $A_1, A_3$-attached elliptic tails.",
    },
    Anchor {
        id: "alpha.c3",
        quote: r"For $\alpha \in (\frac{2}{3}, \frac{7}{10})$: $C$ has only $A_{\leq 3}$ singularities, and does not contain:",
    },
    Anchor {
        id: "alpha.w3",
        quote: r"For $\alpha = \frac{2}{3}$: $C$ has only $A_{\leq 4}$ singularities, and does not contain:",
    },
    Anchor {
        id: "alpha.c4",
        quote: r"For $\alpha \in (\frac{2}{3}-\epsilon, \frac{2}{3})$: $C$ has only $A_{\leq 4}$-singularities, and does not contain:",
    },
    Anchor {
        id: "alpha.chain_a1a1",
        quote: r"$A_1/A_1$-attached elliptic chains.",
    },
    Anchor {
        id: "alpha.chain_a4",
        quote: r"$A_1/A_1, A_1/A_4, A_4/A_4$-attached elliptic chains",
    },
    Anchor {
        id: "alpha.tail_a4",
        quote: r"$A_1,A_3, A_4$-attached elliptic tails",
    },
    Anchor {
        id: "alpha.weierstrass_chain",
        quote: r"$A_1$-attached Weierstrass chains.",
    },
    Anchor {
        id: "alpha.weierstrass_tail",
        quote: r"genus two tails attached at a \\Weierstrass point",
    },
    // degenerations and normal forms
    Anchor {
        id: "degen.a3_limit",
        quote: r"\lim_{t\to 0} \rho(t)_* C = C_{A,B}",
    },
    Anchor {
        id: "degen.a3_form",
        quote: r"C = (y^2 z^2 + B x^3 y z + A x^6 + y^2 h_4(x,y) = 0)",
    },
    Anchor {
        id: "degen.a3_unique",
        quote: r"there exists a unique $v\in \mathbbm{k}$ such that $\mathrm{coeff}_{x^5 y}(g_6^\sigma)  = 0$",
    },
    Anchor {
        id: "degen.a3_coefficient",
        quote: r"b_5 - \frac{B a_2}{2}  + \frac{3}{2}(4A-B^2) v",
    },
    Anchor {
        id: "degen.d4",
        quote: r"special degeneration induced by the 1-parameter subgroup $t \cdot ([x,y] \times [u,v]) = [x,ty] \times [t^{-1}u, v]$",
    },
    Anchor {
        id: "degen.d4_limit",
        quote: r"a_3y^3u^3 + a_2xy^2u^2v + a_1x^2yuv^2 + a_0 x^3v^3",
    },
    Anchor {
        id: "degen.a4_rescale",
        quote: r"we may assume that $b_5 = -1$",
    },
    Anchor {
        id: "degen.a4_form",
        quote: r"f(x, y) = y^2 - 2x^3 y + x^6 - x^5y + y^2 h_4(x,y)",
    },
    Anchor {
        id: "degen.a4_action",
        quote: r"t\cdot ([z_0, z_1, z_2, z_3], s) = ([z_0, t^2 z_1, t^6 z_2, t^5 z_3], t s)",
    },
    Anchor {
        id: "degen.a4_invariant",
        quote: r"It is straightforward to check that $(\mathcal{X}, \mathcal{C})$ is $\mathbb{G}_m$-invariant",
    },
    Anchor {
        id: "degen.a4_fiber1",
        quote: r"& = y^2z^2 - 2x^3 y z + x^6 - x^5y + y^2 h_4(x,y).",
    },
    Anchor {
        id: "degen.a4_fiber0",
        quote: r"Then the equation of $\mathcal{C}_0$ in $\mathbb{P}(1,2,9)$ becomes $0 = y_2^2 - y_0^8 y_1^5$",
    },
    Anchor {
        id: "degen.a4_target",
        quote: r"Thus $\mathcal{C}_0$ is isomorphic to $V(x_2^2 - x_0^5 x_1^5)$",
    },
    // divisor classes
    Anchor {
        id: "picard.canonical",
        quote: r"K_{\overline{\mathcal{M}}_4} = 13\lambda - 2\delta",
    },
    Anchor {
        id: "picard.delta",
        quote: r"$\delta = \delta_0 + \delta_1 + \dots + \delta_{\lfloor g/2 \rfloor }$",
    },
    Anchor {
        id: "picard.l_lower",
        quote: r"13\lambda_\alpha - (2-\alpha)\delta_{0, \alpha} & \textrm{ if }\alpha \in (\frac{5}{9}, \frac{19}{29}];",
    },
    Anchor {
        id: "picard.l_upper",
        quote: r"13\lambda_\alpha - (2-\alpha)(\delta_{0, \alpha}+ \delta_{2, \alpha}) & \textrm{ if }\alpha \in (\frac{19}{29}, \frac{2}{3}).",
    },
    Anchor {
        id: "picard.l_two_thirds",
        quote: r"\mathfrak{L}_{\frac{2}{3}}^{-} := 13\lambda_\alpha - (2-\frac{2}{3}) (\delta_{0,\alpha}+\delta_{2,\alpha})",
    },
    Anchor {
        id: "picard.vgit",
        quote: r"\phi_t^*(4s\eta + 4\xi) = (34s-33)\lambda - (4s-4) \delta_0 - (14s-15)\delta_1 - (18s-21) \delta_2",
    },
    Anchor {
        id: "picard.vgit_three_halves",
        quote: r"= 18\lambda_\alpha - 2\delta_{0,\alpha} - 6 \delta_{2, \alpha} = 2(9\lambda_\alpha - \delta_{0,\alpha} - 3 \delta_{2, \alpha})",
    },
    Anchor {
        id: "picard.combination",
        quote: r"= 29 \lambda_\alpha - 3\delta_{0,\alpha} - \frac{11}{3}\delta_{2, \alpha} = \frac{29}{13}\mathfrak{L}_{\frac{19}{29}}^+ -\frac{2}{3}\delta_{2,\alpha}",
    },
    Anchor {
        id: "picard.epsilon",
        quote: r"a (9\lambda_{\alpha'} - \delta_{0, \alpha'} - 3\delta_{2,\alpha'}) + b \mathfrak{L}_{\frac{2}{3}-\epsilon} = \tfrac{29}{13}\mathfrak{L}_{\frac{19}{29}}^+ - 2a\delta_{2,\alpha'}",
    },
    Anchor {
        id: "picard.epsilon_coefficients",
        quote: r"$a := \frac{1-87\epsilon}{3(1-9\epsilon)}$ and $b :=\frac{2}{1-9\epsilon}$",
    },
    Anchor {
        id: "picard.pullback_first",
        quote: r"= 9j^* \lambda_\alpha - j^* \delta_{0,\alpha}.",
    },
    Anchor {
        id: "picard.pullback_second",
        quote: r"29\lambda_{\alpha'} - 3\delta_{0, \alpha'} - 3\delta_{2, \alpha'} = 29j^*\lambda_\alpha  - 3 j^* \delta_{0,\alpha}.",
    },
    Anchor {
        id: "picard.pullback",
        quote: r"j^* \lambda_\alpha = \lambda_{\alpha'} + 3\delta_{2,\alpha'}, \qquad j^* \delta_{0, \alpha} = \delta_{0, \alpha'} + 30 \delta_{2, \alpha'}.",
    },
    Anchor {
        id: "picard.decomposition_upper",
        quote: r"K_{\overline{\mathcal{M}}_4}+ \alpha \delta = \varphi_\alpha^* \mathfrak{L}_\alpha + (9-11\alpha) \delta_1.",
    },
    Anchor {
        id: "picard.decomposition_lower",
        quote: r"& = \varphi_{\alpha}^*\mathfrak{L}_{\alpha} + (19-29\alpha)\delta_{2} + (9-11\alpha) \delta_1.",
    },
    Anchor {
        id: "picard.restriction",
        quote: r"= \tfrac{58}{91} \left.\mathfrak{L}_{\frac{19}{29}}^+\right|_{\delta_{2,\alpha}}",
    },
    Anchor {
        id: "picard.slope",
        quote: r"t(\alpha):=\frac{34\alpha - 16}{33\alpha -14}",
    },
    Anchor {
        id: "picard.walls",
        quote: r"(\alpha_1, \dots, \alpha_9) = \left( \frac{9}{11}, \frac{7}{10}, \frac{2}{3}, \frac{19}{29}, \frac{5}{9}, \frac{23}{44}, \frac{1}{2}, \frac{29}{60},  \frac{8}{17} \right)",
    },
    Anchor {
        id: "picard.table",
        quote: r"\caption{Hassett--Keel Program in genus four}",
    },
    Anchor {
        id: "picard.vgit_interval",
        quote: r"for $t \in (\tfrac{2}{9}, \tfrac{2}{5})$",
    },
    Anchor {
        id: "picard.last_interval",
        quote: r"\mathscr{X}_{t \in(\frac{6}{11},\frac{2}{3})}",
    },
];

/// Look up an anchor by id.
pub fn anchor(id: &str) -> Option<&'static Anchor> {
    ANCHORS.iter().find(|a| a.id == id)
}

/// Quote for a known id; panics on an unknown id, which is a programming error.
pub fn quote(id: &str) -> &'static str {
    match anchor(id) {
        Some(a) => a.quote,
        None => panic!("unknown anchor id `{id}`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = ANCHORS.iter().map(|a| a.id).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}
