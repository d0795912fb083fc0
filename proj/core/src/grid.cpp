namespace shocklab {
}
