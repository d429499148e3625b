#pragma once

// Built-in catalog of family specs used by `scan` and the acceptance suite.

#include <string>
#include <vector>

namespace soclelab {

struct CatalogEntry {
  std::string spec;
  std::string family;
};

/// Orders up to 288.
inline const std::vector<CatalogEntry>& default_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"C2", "abelian"},
      {"C4", "abelian"},
      {"C6", "abelian"},
      {"C12", "abelian"},
      {"elementary_abelian(2,3)", "abelian"},
      {"elementary_abelian(3,2)", "abelian"},
      {"direct(C4,C2)", "abelian"},
      {"D6", "dihedral"},
      {"D8", "dihedral"},
      {"D10", "dihedral"},
      {"D12", "dihedral"},
      {"Q8", "quaternion"},
      {"Q16", "quaternion"},
      {"dicyclic(3)", "quaternion"},
      {"extraspecial(2,+)", "extraspecial"},
      {"extraspecial(2,-)", "extraspecial"},
      {"extraspecial(3,+)", "extraspecial"},
      {"extraspecial(3,-)", "extraspecial"},
      {"AGL(1,3)", "affine"},
      {"AGL(1,4)", "affine"},
      {"AGL(1,5)", "affine"},
      {"AGL(1,7)", "affine"},
      {"AGL(1,8)", "affine"},
      {"AGL(1,9)", "affine"},
      {"AGL(1,11)", "affine"},
      {"AGL(1,13)", "affine"},
      {"AGL(1,16)", "affine"},
      {"fpf(C7,3)", "frobenius"},
      {"fpf(C11,5)", "frobenius"},
      {"fpf(elementary_abelian(2,4),5)", "frobenius"},
      {"S4", "symmetric"},
      {"A5", "alternating"},
      {"SL2(3)", "special_linear"},
      {"direct(SL2(3),C3)", "direct"},
      {"direct(SL2(3),C5)", "direct"},
      {"direct(SL2(3),C7)", "direct"},
      {"direct(AGL(1,4),C3)", "direct"},
      {"direct(AGL(1,4),C5)", "direct"},
      {"direct(AGL(1,4),C7)", "direct"},
      {"central(SL2(3),SL2(3))", "central"},
      {"central(Q8,Q8)", "central"},
      {"central(SL2(3),Q8)", "central"},
      {"central(Q8,D8)", "central"},
      {"central(SL2(3),C4)", "central"},
      {"fpf(He3,8)", "extension"},
      {"fpf(He3,4)", "extension"},
  };
  return entries;
}

/// Larger class-two examples (orders 448 and 648) where G' is not Camina.
inline const std::vector<CatalogEntry>& extended_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"classtwo(8,1)", "class_two"},
      {"classtwo(9,1)", "class_two"},
  };
  return entries;
}

}  // namespace soclelab
