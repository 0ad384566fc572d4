namespace dyadic {}
