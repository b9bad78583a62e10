"""Built-in identity corpus.

``corpus.qid`` next to this module is the same corpus rendered by the
pretty-printer; regenerate it with ``thetaq corpus dump``.
"""

from __future__ import annotations

import functools
from importlib import resources
from typing import Dict, List

from .ast import IdentityDecl
from .parser import parse
from .printer import pretty_file

_SOURCE = r'''
identity "gosper_1_15" {
  vars: a, b, x, y;
  lhs: sinq(a+b+x+y) * ccsq(x-y) * sinq(a-b);
  rhs: sinq(a+x)*sinq(a+y)*ccsq(b+x)*ccsq(b+y) - sinq(b+x)*sinq(b+y)*ccsq(a+x)*ccsq(a+y);
  tags: theorem, conjecture;
}

identity "thm_7_2" {
  vars: a, b, x, y;
  lhs: cosq(x-y) * sinq(x+y+a+b) * sinq(a-b);
  rhs: sinq(x+a)*sinq(y+a)*cosq(x+b)*cosq(y+b) - cosq(x+a)*cosq(y+a)*sinq(x+b)*sinq(y+b);
  tags: theorem;
}

# the left side carries ssnq(0) = theta4(0|-1/tau)/theta3(0|-1/tau); without it
# the identity fails numerically
identity "thm_7_5" {
  vars: a, b, x, y;
  lhs: ssnq(0) * ssnq(x-y) * sinq(x+y+a+b) * sinq(a-b);
  rhs: sinq(x+a)*sinq(y+a)*ssnq(x+b)*ssnq(y+b) - ssnq(x+a)*ssnq(y+a)*sinq(x+b)*sinq(y+b);
  tags: theorem, corrected;
}

identity "rel_1_3" {
  vars: z;
  lhs: sinq(z);
  rhs: theta1(z, -1/tau) / thetanull2(-1/tau);
  tags: dual_form;
}

identity "rel_1_20" {
  vars: z;
  lhs: cosq(z);
  rhs: theta2(z, -1/tau) / thetanull2(-1/tau);
  tags: dual_form;
}

identity "rel_2_8" {
  vars: z;
  lhs: cosq[2](z) / cosq(z);
  rhs: theta3(z, -1/tau) / thetanull3(-1/tau);
  tags: dual_form;
}

identity "rel_7_4" {
  vars: z;
  lhs: sinq[2](z) / sinq(z);
  rhs: theta4(z, -1/tau) / thetanull3(-1/tau);
  tags: dual_form;
}

identity "rel_10_1" {
  vars: z;
  lhs: theta1(z + pi/2);
  rhs: theta2(z);
  tags: theta, shift;
}

identity "rel_10_2" {
  vars: z;
  lhs: theta1(z + (pi + pi*tau)/2);
  rhs: qpow(-1/4) * exp(-I*z) * theta3(z);
  tags: theta, shift;
}

identity "rel_6_4" {
  vars: z;
  lhs: 2 * theta2(z, 2*tau) * theta3(z, 2*tau);
  rhs: thetanull2(tau) * theta2(z);
  tags: theta, doubling;
}

identity "rel_6_5" {
  vars: ;
  lhs: thetanull2(tau)^2;
  rhs: 2 * thetanull2(2*tau) * thetanull3(2*tau);
  tags: theta, doubling;
}

# squared so that no square root is needed
identity "rel_4_1" {
  vars: ;
  lhs: theta1(pi/4)^2;
  rhs: 2 * qpow(1/2) * poch(qpow(2), qpow(2))^2 * poch(-qpow(4), qpow(4))^2;
  tags: theta, product;
}

# sum (-1)^n q^(n(n-1)/2) w^n with w = exp(2 I x), written as a theta4 at tau/2
identity "triple_product" {
  vars: x;
  lhs: theta4(x - pi*tau/4, tau/2);
  rhs: poch(qpow(1), qpow(1)) * poch(exp(2*I*x), qpow(1)) * poch(qpow(1)*exp(-2*I*x), qpow(1));
  tags: theta, product;
}

identity "q_double_2" {
  vars: x;
  lhs: sinq(2*x);
  rhs: piq() / piq[2]() * sinq[2](x) * cosq[2](x);
  tags: conjecture;
}

identity "q_double_3" {
  vars: x;
  lhs: cosq(2*x);
  rhs: cosq[2](x)^2 - sinq[2](x)^2;
  tags: conjecture;
}

identity "abo_touk_q4" {
  vars: x, y;
  lhs: sinq[4](x)/sinq[2](x)*cosq(y)^2 + cosq[4](x)/cosq[2](x)*sinq(y)^2;
  rhs: sinq[4](y)/sinq[2](y)*cosq(x)^2 + cosq[4](y)/cosq[2](y)*sinq(x)^2;
  tags: known;
}

identity "abo_touk_q3" {
  vars: x, y;
  lhs: sinq[3](x)/sinq(x)*cosq(y)^2 + cosq[3](x)/cosq(x)*sinq(y)^2;
  rhs: sinq[3](y)/sinq(y)*cosq(x)^2 + cosq[3](y)/cosq(y)*sinq(x)^2;
  tags: known;
}

identity "ptolemy_ccs" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sinq(alpha+beta)*sinq(beta+gamma)*ccsq(alpha)*ccsq(gamma);
  rhs: sinq(alpha)*sinq(gamma)*ccsq(alpha+beta)*ccsq(beta+gamma) + sinq(beta)*sinq(delta)*ccsq(alpha-gamma);
  tags: ptolemy, constrained;
}

identity "ptolemy_ssn" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sinq(alpha+beta)*sinq(beta+gamma)*ssnq(alpha)*ssnq(gamma);
  rhs: sinq(alpha)*sinq(gamma)*ssnq(alpha+beta)*ssnq(beta+gamma) + ssnq(0)*sinq(beta)*sinq(delta)*ssnq(alpha-gamma);
  tags: ptolemy, constrained, corrected;
}

identity "cons_7_6" {
  vars: a, b, x, y;
  lhs: sinq(a+b+x+y) * ccsq(x-y) * sinq(a-b);
  rhs: cosq(b+x)*cosq(b+y)*ssnq(a+x)*ssnq(a+y) - cosq(a+x)*cosq(a+y)*ssnq(b+x)*ssnq(b+y);
  tags: consequence;
}

identity "cons_7_6_cos" {
  vars: a, b, x, y;
  lhs: cosq(a+b+x+y) * ccsq(x-y) * cosq(a-b);
  rhs: cosq(a+x)*cosq(a+y)*ccsq(b+x)*ccsq(b+y) - sinq(b+x)*sinq(b+y)*ssnq(a+x)*ssnq(a+y);
  tags: consequence;
}

identity "cons_7_3" {
  vars: a, b, x, y;
  lhs: cosq(x-y) * cosq(x+y+a+b) * cosq(a-b);
  rhs: cosq(x+a)*cosq(y+a)*cosq(x+b)*cosq(y+b) - sinq(x+a)*sinq(y+a)*sinq(x+b)*sinq(y+b);
  tags: consequence;
}

identity "cons_ssn_sin" {
  vars: a, b, x, y;
  lhs: ssnq(0) * ssnq(x-y) * sinq(x+y+a+b) * sinq(a-b);
  rhs: ccsq(x+a)*ccsq(y+a)*cosq(x+b)*cosq(y+b) - cosq(x+a)*cosq(y+a)*ccsq(x+b)*ccsq(y+b);
  tags: consequence, corrected;
}

identity "cons_ssn_cos" {
  vars: a, b, x, y;
  lhs: ssnq(0) * ssnq(x-y) * cosq(x+y+a+b) * cosq(a-b);
  rhs: cosq(x+a)*cosq(y+a)*ssnq(x+b)*ssnq(y+b) - ccsq(x+a)*ccsq(y+a)*sinq(x+b)*sinq(y+b);
  tags: consequence, corrected;
}

identity "prod_sin_diff" {
  vars: x, y;
  lhs: sinq(x+y) * sinq(x-y);
  rhs: sinq(x)^2*cosq(y)^2 - cosq(x)^2*sinq(y)^2;
  tags: consequence, conjecture;
}

identity "prod_cos_diff" {
  vars: x, y;
  lhs: cosq(x+y) * cosq(x-y);
  rhs: cosq(x)^2*cosq(y)^2 - sinq(x)^2*sinq(y)^2;
  tags: consequence;
}

identity "shift_cos_sin" {
  vars: z;
  lhs: cosq(z);
  rhs: sinq(pi/2 - z);
  tags: shift;
}

identity "shift_ccs_ssn" {
  vars: z;
  lhs: ccsq(z + pi/2);
  rhs: ssnq(z);
  tags: shift;
}

identity "classical_ptolemy" {
  vars: alpha, beta, gamma;
  where:
    delta = pi - alpha - beta - gamma;
  lhs: sin(alpha+beta) * sin(beta+gamma);
  rhs: sin(alpha)*sin(gamma) + sin(beta)*sin(delta);
  tags: limit_q1, constrained;
}

identity "classical_sum_diff" {
  vars: a, b, x, y;
  lhs: sin(a+b+x+y) * sin(a-b);
  rhs: sin(a+x)*sin(a+y) - sin(b+x)*sin(b+y);
  tags: limit_q1;
}

identity "classical_sum_diff_cos" {
  vars: a, b, x, y;
  lhs: sin(a+b+x+y) * sin(a-b);
  rhs: cos(b+x)*cos(b+y) - cos(a+x)*cos(a+y);
  tags: limit_q1;
}
'''

QID_HEADER = "# Built-in identity corpus (generated by `thetaq corpus dump`; do not edit)."


@functools.lru_cache(maxsize=1)
def _corpus():
    return tuple(parse(_SOURCE))


def builtin_corpus() -> List[IdentityDecl]:
    return list(_corpus())


def corpus_by_name() -> Dict[str, IdentityDecl]:
    return {d.name: d for d in _corpus()}


def shipped_qid_text() -> str:
    return resources.files(__package__).joinpath("corpus.qid").read_text(encoding="utf-8")


def render_qid() -> str:
    return pretty_file(builtin_corpus(), QID_HEADER)


def load_qid(path) -> List[IdentityDecl]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_shipped_qid() -> str:
    from pathlib import Path

    target = Path(__file__).with_name("corpus.qid")
    target.write_text(render_qid(), encoding="utf-8")
    return str(target)
