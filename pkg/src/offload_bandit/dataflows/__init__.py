# NOTE: Every public function in these modules is a Hamilton node; keep helpers private.
