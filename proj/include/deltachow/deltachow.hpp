#pragma once

#include "deltachow/errors.hpp"
#include "deltachow/symbol.hpp"
#include "deltachow/polynomial.hpp"
#include "deltachow/text.hpp"
#include "deltachow/groebner.hpp"
#include "deltachow/hilbert.hpp"
#include "deltachow/ideal.hpp"
#include "deltachow/diffpoly.hpp"
#include "deltachow/charset.hpp"
#include "deltachow/prolong.hpp"
#include "deltachow/chow.hpp"
