// Copyright 2026 The QIBE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qibe/revcirc/builders.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qibe::revcirc {

namespace {

unsigned bits_of(std::int64_t q) {
  unsigned bits = 0;
  while (q > 0) {
    ++bits;
    q >>= 1;
  }
  return bits;
}

void require_width(unsigned l, const char* who) {
  if (l == 0) throw std::invalid_argument(std::string(who) + ": width must be >= 1");
  if (l > 62) throw std::invalid_argument(std::string(who) + ": width too large");
}

void require_fits(std::uint64_t d, unsigned l, const char* who) {
  require_width(l, who);
  if (d >> l) throw std::invalid_argument(std::string(who) + ": constant does not fit in width");
}

void require_modulus(std::int64_t q, const char* who) {
  if (q < 3) throw std::invalid_argument(std::string(who) + ": modulus must be >= 3");
  if (q >= (std::int64_t{1} << 30)) throw std::invalid_argument(std::string(who) + ": modulus too large");
}

// Cuccaro majority / unmajority-and-add on (c, b, a).
void maj(Circuit& c, Qubit x, Qubit y, Qubit z) {
  c.cx(z, y);
  c.cx(z, x);
  c.ccx(x, y, z);
}

void uma(Circuit& c, Qubit x, Qubit y, Qubit z) {
  c.ccx(x, y, z);
  c.cx(z, x);
  c.cx(x, y);
}

// Shared body of the two adders; `carry_out` is the qubit receiving the final
// carry, or nullptr to drop it.
void ripple_add(Circuit& c, const Register& a, const Register& b, Qubit carry, const Qubit* carry_out) {
  const unsigned l = a.size;
  maj(c, carry, b[0], a[0]);
  for (unsigned i = 1; i < l; ++i) maj(c, a[i - 1], b[i], a[i]);
  if (carry_out) c.cx(a[l - 1], *carry_out);
  for (unsigned i = l - 1; i >= 1; --i) uma(c, a[i - 1], b[i], a[i]);
  uma(c, carry, b[0], a[0]);
}

}  // namespace

Circuit build_adder(unsigned l) {
  require_width(l, "build_adder");
  Circuit c;
  const auto a = c.add_register("a", l, RegisterRole::input);
  const auto b = c.add_register("b", l + 1, RegisterRole::output);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const Qubit top = b[l];
  ripple_add(c, a, b, carry[0], &top);
  return c;
}

Circuit build_wrapping_adder(unsigned l) {
  require_width(l, "build_wrapping_adder");
  Circuit c;
  const auto a = c.add_register("a", l, RegisterRole::input);
  const auto b = c.add_register("b", l, RegisterRole::output);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  ripple_add(c, a, b, carry[0], nullptr);
  return c;
}

Circuit build_comparator(unsigned l) {
  require_width(l, "build_comparator");
  Circuit c;
  const auto a = c.add_register("a", l, RegisterRole::input);
  const auto b = c.add_register("b", l, RegisterRole::input);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const auto flag = c.add_register("flag", 1, RegisterRole::output);
  // The carry out of (~a + b) is [a < b]; compute it, copy it, uncompute.
  for (unsigned i = 0; i < l; ++i) c.x(a[i]);
  maj(c, carry[0], b[0], a[0]);
  for (unsigned i = 1; i < l; ++i) maj(c, a[i - 1], b[i], a[i]);
  c.cx(a[l - 1], flag[0]);
  for (unsigned i = l - 1; i >= 1; --i) {
    c.ccx(a[i - 1], b[i], a[i]);
    c.cx(a[i], a[i - 1]);
    c.cx(a[i], b[i]);
  }
  c.ccx(carry[0], b[0], a[0]);
  c.cx(a[0], carry[0]);
  c.cx(a[0], b[0]);
  for (unsigned i = 0; i < l; ++i) c.x(a[i]);
  return c;
}

Circuit build_ctrl_copy_const(std::uint64_t d, unsigned l) {
  require_fits(d, l, "build_ctrl_copy_const");
  Circuit c;
  const auto ctrl = c.add_register("control", 1, RegisterRole::input);
  const auto target = c.add_register("target", l, RegisterRole::output);
  for (unsigned i = 0; i < l; ++i)
    if ((d >> i) & 1) c.cx(ctrl[0], target[i]);
  return c;
}

Circuit build_const_xor(std::uint64_t d, unsigned l) {
  require_fits(d, l, "build_const_xor");
  Circuit c;
  const auto target = c.add_register("target", l, RegisterRole::output);
  for (unsigned i = 0; i < l; ++i)
    if ((d >> i) & 1) c.x(target[i]);
  return c;
}

Circuit build_fanout(unsigned l) {
  require_width(l, "build_fanout");
  Circuit c;
  const auto src = c.add_register("source", l, RegisterRole::input);
  const auto dst = c.add_register("target", l, RegisterRole::output);
  for (unsigned i = 0; i < l; ++i) c.cx(src[i], dst[i]);
  return c;
}

Circuit build_mcx(unsigned l) {
  if (l < 2) throw std::invalid_argument("build_mcx: needs at least 2 controls");
  Circuit c;
  const auto ctrl = c.add_register("controls", l, RegisterRole::input);
  const auto target = c.add_register("target", 1, RegisterRole::output);
  if (l == 2) {
    c.ccx(ctrl[0], ctrl[1], target[0]);
    return c;
  }
  const auto anc = c.add_register("ancilla", l - 2, RegisterRole::ancilla);
  // anc[i] = ctrl[0] & ... & ctrl[i+1]
  c.ccx(ctrl[0], ctrl[1], anc[0]);
  for (unsigned i = 1; i < l - 2; ++i) c.ccx(ctrl[i + 1], anc[i - 1], anc[i]);
  c.ccx(ctrl[l - 1], anc[l - 3], target[0]);
  for (unsigned i = l - 2; i-- > 1;) c.ccx(ctrl[i + 1], anc[i - 1], anc[i]);
  c.ccx(ctrl[0], ctrl[1], anc[0]);
  return c;
}

Circuit build_mod_adder(std::int64_t q, unsigned L) {
  require_modulus(q, "build_mod_adder");
  if (L != bits_of(q)) throw std::invalid_argument("build_mod_adder: L must be the bit length of q");
  Circuit c;
  const auto a = c.add_register("a", L, RegisterRole::input);
  const auto b = c.add_register("b", L, RegisterRole::output);
  const auto overflow = c.add_register("overflow", 1, RegisterRole::ancilla);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const auto k = c.add_register("k", L, RegisterRole::constant);
  const auto flag = c.add_register("flag", 1, RegisterRole::ancilla);

  const Circuit add = build_adder(L);
  const Circuit sub = invert(add);
  const Circuit load_q = build_const_xor(static_cast<std::uint64_t>(q), L);
  const Circuit copy_q = build_ctrl_copy_const(static_cast<std::uint64_t>(q), L);
  const auto b_ext = wires({b.qubits(), overflow.qubits()});

  // b <- a + b, then a + b - q; the sign bit says whether q was too much.
  c.append(add, wires({a.qubits(), b_ext, carry.qubits()}));
  c.append(load_q, k.qubits());
  c.append(sub, wires({k.qubits(), b_ext, carry.qubits()}));
  c.cx(overflow[0], flag[0]);
  c.append(load_q, k.qubits());
  // Add q back when the subtraction went negative.
  c.append(copy_q, wires({flag.qubits(), k.qubits()}));
  c.append(add, wires({k.qubits(), b_ext, carry.qubits()}));
  c.append(copy_q, wires({flag.qubits(), k.qubits()}));
  // flag = [a + b < q] = [result >= a]; clear it with a comparison.
  c.append(build_comparator(L), wires({b.qubits(), a.qubits(), carry.qubits(), flag.qubits()}));
  c.x(flag[0]);
  return c;
}

Circuit build_abs(unsigned L) {
  require_width(L, "build_abs");
  Circuit c;
  const auto value = c.add_register("value", L + 1, RegisterRole::output);
  const auto inc = c.add_register("inc", L, RegisterRole::constant);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const Qubit sign = value[L];
  std::vector<Qubit> low(value.qubits());
  low.pop_back();
  for (Qubit q : low) c.cx(sign, q);
  c.cx(sign, inc[0]);
  c.append(build_wrapping_adder(L), wires({inc.qubits(), low, carry.qubits()}));
  c.cx(sign, inc[0]);
  return c;
}

Circuit build_encrypt_bit(std::int64_t x, std::int64_t q) {
  require_modulus(q, "build_encrypt_bit");
  if (x < 0 || x >= q) throw std::invalid_argument("build_encrypt_bit: x must lie in [0, q)");
  const unsigned L = bits_of(q);
  const auto half = static_cast<std::uint64_t>(q / 2);
  const auto flip = static_cast<std::uint64_t>((x + q / 2) % q);

  Circuit c;
  const auto message = c.add_register("message", 1, RegisterRole::input);
  const auto work = c.add_register("work", L, RegisterRole::output);
  const auto xconst = c.add_register("xconst", L, RegisterRole::constant);
  const auto overflow = c.add_register("overflow", 1, RegisterRole::ancilla);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const auto k = c.add_register("k", L, RegisterRole::constant);
  const auto flag = c.add_register("flag", 1, RegisterRole::ancilla);
  std::vector<Qubit> mcx_scratch;
  if (L > 2) mcx_scratch = c.add_register("mcx_ancilla", L - 2, RegisterRole::ancilla).qubits();

  // Step 1: work = floor(q/2)·m.
  c.append(build_ctrl_copy_const(half, L), wires({message.qubits(), work.qubits()}));
  // Step 2: work = (x + floor(q/2)·m) mod q.
  const Circuit load_x = build_const_xor(static_cast<std::uint64_t>(x), L);
  c.append(load_x, xconst.qubits());
  c.append(build_mod_adder(q, L), wires({xconst.qubits(), work.qubits(), overflow.qubits(),
                                         carry.qubits(), k.qubits(), flag.qubits()}));
  c.append(load_x, xconst.qubits());
  // Step 3: work xor (x + floor(q/2)) mod q is zero exactly when m = 1; use
  // that pattern to clear the message qubit, then undo the xor.
  const Circuit mask = build_const_xor(flip, L);
  c.append(mask, work.qubits());
  for (Qubit w : work.qubits()) c.x(w);
  // The L-controlled NOT is expanded here rather than left as one MCX gate so
  // that its scratch qubits belong to this block; stacked copies then scale
  // linearly in width.
  c.append(build_mcx(L), wires({work.qubits(), message.qubits(), mcx_scratch}));
  for (Qubit w : work.qubits()) c.x(w);
  c.append(mask, work.qubits());
  return c;
}

Circuit build_decrypt_bit(std::int64_t y, std::int64_t q) {
  require_modulus(q, "build_decrypt_bit");
  if (y < 0 || y >= q) throw std::invalid_argument("build_decrypt_bit: y must lie in [0, q)");
  const unsigned L = bits_of(q);
  const auto half = static_cast<std::uint64_t>(q / 2);
  const auto quarter = static_cast<std::uint64_t>(q / 4);

  Circuit c;
  const auto cipher = c.add_register("cipher", L, RegisterRole::output);
  const auto sign = c.add_register("sign", 1, RegisterRole::ancilla);
  const auto message = c.add_register("message", 1, RegisterRole::output);
  const auto yconst = c.add_register("yconst", L, RegisterRole::constant);
  const auto overflow = c.add_register("overflow", 1, RegisterRole::ancilla);
  const auto carry = c.add_register("carry", 1, RegisterRole::ancilla);
  const auto k = c.add_register("k", L, RegisterRole::constant);
  const auto flag = c.add_register("flag", 1, RegisterRole::ancilla);
  const auto half_reg = c.add_register("half", L, RegisterRole::constant);
  const auto inc = c.add_register("inc", L, RegisterRole::constant);
  const auto quarter_reg = c.add_register("quarter", L, RegisterRole::constant);
  const auto copy = c.add_register("copy", L, RegisterRole::ancilla);

  const Circuit mod_add = build_mod_adder(q, L);
  const Circuit mod_sub = invert(mod_add);
  const Circuit add = build_adder(L);
  const Circuit abs = build_abs(L);
  const Circuit load_y = build_const_xor(static_cast<std::uint64_t>(y), L);
  const Circuit load_half = build_const_xor(half, L);
  const Circuit load_quarter = build_const_xor(quarter, L);
  const Circuit copy_half = build_ctrl_copy_const(half, L);

  const auto scratch = wires({overflow.qubits(), carry.qubits(), k.qubits(), flag.qubits()});
  const auto value = wires({cipher.qubits(), sign.qubits()});

  // 1: cipher = (c0 - y) mod q
  c.append(load_y, yconst.qubits());
  c.append(mod_sub, wires({yconst.qubits(), cipher.qubits(), scratch}));
  // 2: value = (c0 - y) mod q - floor(q/2), two's complement over L+1 bits
  c.append(load_half, half_reg.qubits());
  c.append(invert(add), wires({half_reg.qubits(), value, carry.qubits()}));
  // 3: value = 2^L·sign + |b|
  c.append(abs, wires({value, inc.qubits(), carry.qubits()}));
  // 4: message = [|b| < floor(q/4)], comparing only the magnitude bits
  c.append(load_quarter, quarter_reg.qubits());
  c.append(build_comparator(L),
           wires({cipher.qubits(), quarter_reg.qubits(), carry.qubits(), message.qubits()}));
  c.append(load_quarter, quarter_reg.qubits());
  // 5-7: undo 3, 2 and 1; cipher = c0 again
  c.append(invert(abs), wires({value, inc.qubits(), carry.qubits()}));
  c.append(add, wires({half_reg.qubits(), value, carry.qubits()}));
  c.append(load_half, half_reg.qubits());
  c.append(mod_add, wires({yconst.qubits(), cipher.qubits(), scratch}));
  c.append(load_y, yconst.qubits());
  // 8: copy = floor(q/2)·m
  c.append(copy_half, wires({message.qubits(), copy.qubits()}));
  // 9: cipher = (c0 - floor(q/2)·m) mod q, which no longer depends on m
  c.append(mod_sub, wires({copy.qubits(), cipher.qubits(), scratch}));
  // 10: undo 8
  c.append(copy_half, wires({message.qubits(), copy.qubits()}));
  return c;
}

Circuit build_encrypt_circuit(std::span<const std::int64_t> xs, std::int64_t q) {
  if (xs.empty()) throw std::invalid_argument("build_encrypt_circuit: need at least one bit");
  std::vector<Circuit> blocks;
  blocks.reserve(xs.size());
  for (auto x : xs) blocks.push_back(build_encrypt_bit(x, q));
  return stack(blocks);
}

Circuit build_decrypt_circuit(std::span<const std::int64_t> ys, std::int64_t q) {
  if (ys.empty()) throw std::invalid_argument("build_decrypt_circuit: need at least one bit");
  std::vector<Circuit> blocks;
  blocks.reserve(ys.size());
  for (auto y : ys) blocks.push_back(build_decrypt_bit(y, q));
  return stack(blocks);
}

}  // namespace qibe::revcirc
