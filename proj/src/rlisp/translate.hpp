#pragma once

#include "lisp/interp.hpp"

namespace rr::rlisp {

// Turns a parsed statement into a Lisp form. Algebraic statements become
// calls on the session's ALG-* forms with the expression quoted, so nothing
// is simplified here. Symbolic procedure bodies translate to plain Lisp.
//
//   expression        (AEVAL 'e)
//   BEGIN ... END     (PROG vars (SETQ v 0) ... stmt' ... label ...)
//   IF c THEN a ELSE b (COND ((ALG-BOOL 'c) a') (T b'))
//   FOR v ... DO s    (ALG-FOR-DO v start step finish s')
//   WRITE items       (ALG-WRITE items...)
//   RETURN e          (RETURN (AEVAL 'e))
//   GO TO l           (GO l)
//   PROCEDURE         (ALG-PROCEDURE name type params body')
//   declarations      (ALG-EXEC 'stmt)
lisp::Value translate(lisp::Interp& in, const lisp::Value& stmt, bool symbolic = false);

}  // namespace rr::rlisp
