#ifndef SEPFACES_SEPFACES_HPP
#define SEPFACES_SEPFACES_HPP

#include "sepfaces/face.hpp"
#include "sepfaces/gallery.hpp"
#include "sepfaces/json_io.hpp"
#include "sepfaces/locator.hpp"
#include "sepfaces/poly.hpp"
#include "sepfaces/ppt.hpp"
#include "sepfaces/tensor.hpp"
#include "sepfaces/types.hpp"

#endif  // SEPFACES_SEPFACES_HPP
