#pragma once

#include "covtypes/syntax.hpp"

namespace covtypes {

/// Expands every `let* pat = e1 in e2` (innermost first) into
///   let p = e1 in let (ok, r) = p in if ok then (let pat = r in e2) else (false, r)
/// Fresh names are counter-based and avoid every identifier of the program.
SurfaceProgram desugar(const SurfaceProgram& prog);

/// A-normal form. Expects a desugared program. Throws ScopeError on unbound
/// identifiers. Shadowed binders are renamed `name'N` so that every bound
/// name is unique; qualifiers in annotations follow the renaming.
CoreProgram anf_normalize(const SurfaceProgram& prog);

/// desugar then anf_normalize.
CoreProgram elaborate(const SurfaceProgram& prog);

/// Parse + elaborate.
CoreProgram load_program(std::string_view source);

bool alpha_equivalent(const CorePtr& a, const CorePtr& b);
bool alpha_equivalent(const CoreProgram& a, const CoreProgram& b);

/// Structural walk enforcing the ANF invariants (value positions, pair
/// components, unique binders). Throws CovError("anf-violation").
void check_anf(const CorePtr& t);

/// True when the surface expression contains a `let*`.
bool has_monad_bind(const SExprPtr& e);

}  // namespace covtypes
