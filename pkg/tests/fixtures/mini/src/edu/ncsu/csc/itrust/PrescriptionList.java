package edu.ncsu.csc.itrust;

import java.util.ArrayList;
import java.util.List;

/**
 * Prescriptions of a patient, most recent first.
 */
public class PrescriptionList {
	private List<String> prescriptions = new ArrayList<String>();

	public void add(String prescription) {
		prescriptions.add(prescription);
	}

	public int size() {
		return prescriptions.size();
	}
}
