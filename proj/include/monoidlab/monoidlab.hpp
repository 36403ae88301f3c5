#pragma once

#include "monoidlab/error.hpp"
#include "monoidlab/finite_monoid.hpp"
#include "monoidlab/identity.hpp"
#include "monoidlab/malcev.hpp"
#include "monoidlab/presentation.hpp"
#include "monoidlab/reproduce.hpp"
#include "monoidlab/rewrite.hpp"
#include "monoidlab/word.hpp"
