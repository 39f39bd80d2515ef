package edu.ncsu.csc.itrust;

import java.util.List;

/**
 * Lists the adverse events a patient reported.
 */
public class PatientEventAction {
	private long patientID;
	private List<String> events;

	public PatientEventAction(long patientID) {
		this.patientID = patientID;
	}

	/** Returns every adverse event of the patient. */
	public List<String> getEvents() {
		return events;
	}

	public String describeReport(String report) {
		return report.trim();
	}
}
